//! The translation group `H(n+1, q) ≅ (F_q^n, +)` acting on the subspaces of
//! `F_q^(n+1)` that leave the hyperplane `F_q^n`, together with its
//! characters, the projections `p(χ)`, and the maps `θ_n` and `γ_(n-1)(χ)`
//! that split `V(B_q(n+1))` into pieces isomorphic to `V(B_q(n))` and
//! `V(B_q(n-1))`.
//!
//! Subspaces of `F_q^n` keep their own ambient dimension; moving them into
//! `F_q^(n+1)` always goes through [`Subspace::embed`] or [`hat`].

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cyclotomic::CycInt;
use crate::error::{arg, Error, Result};
use crate::gflinalg::{all_vectors, dot, hat, mu_apply, Subspace};
use crate::lattice::{enumerate_all, enumerate_rank, inner, norm_sq, up_apply, LatticeVector};
use crate::qcomb::{qpow, QBinomialTable};
use crate::report::Report;

/// The matrix `[[I, a], [0, 1]]`, identified with `a ∈ F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    q: u8,
    a: Vec<u8>,
}

impl GroupElement {
    pub fn new(q: u8, a: Vec<u8>) -> Self {
        let a = a.into_iter().map(|x| x % q).collect();
        GroupElement { q, a }
    }

    pub fn identity(q: u8, n: usize) -> Self {
        GroupElement { q, a: vec![0; n] }
    }

    /// All `q^n` elements in lexicographic order.
    pub fn all(q: u8, n: usize) -> Vec<GroupElement> {
        all_vectors(q, n).map(|a| GroupElement { q, a }).collect()
    }

    pub fn vector(&self) -> &[u8] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }
}

/// The character `χ_c(a) = ω^(c·a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    q: u8,
    c: Vec<u8>,
}

impl Character {
    pub fn new(q: u8, c: Vec<u8>) -> Self {
        let c = c.into_iter().map(|x| x % q).collect();
        Character { q, c }
    }

    pub fn trivial(q: u8, n: usize) -> Self {
        Character { q, c: vec![0; n] }
    }

    /// Nontrivial characters in lexicographic order of `c`.
    pub fn nontrivial(q: u8, n: usize) -> Vec<Character> {
        all_vectors(q, n)
            .filter(|c| c.iter().any(|&x| x != 0))
            .map(|c| Character { q, c })
            .collect()
    }

    pub fn vector(&self) -> &[u8] {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Exponent `c·a mod q`.
    pub fn exponent(&self, a: &GroupElement) -> u8 {
        dot(&self.c, &a.a, self.q)
    }

    pub fn value(&self, a: &GroupElement) -> CycInt {
        CycInt::root(self.q as u32, self.exponent(a) as u64)
    }

    pub fn conj_value(&self, a: &GroupElement) -> CycInt {
        let e = self.exponent(a) as u64;
        CycInt::root(self.q as u32, (self.q as u64 - e) % self.q as u64)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ(")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_off_hyperplane(x: &Subspace, n: usize) -> Result<()> {
    if x.ambient() != n + 1 {
        return arg(format!(
            "expected a subspace of F^{}, got one of F^{}",
            n + 1,
            x.ambient()
        ));
    }
    if !x.leaves_hyperplane() {
        return arg(format!("{x} lies inside the hyperplane F^{n}"));
    }
    Ok(())
}

/// `φ(a)·X`, canonicalized.
pub fn act(a: &GroupElement, x: &Subspace) -> Result<Subspace> {
    let n = a.n();
    check_off_hyperplane(x, n)?;
    if a.q != x.q() {
        return arg("group element and subspace over different fields");
    }
    if a.is_identity() {
        return Ok(x.clone());
    }
    let q = x.q() as u16;
    let moved: Vec<Vec<u8>> = x
        .columns()
        .map(|c| {
            let t = c[n] as u16;
            let mut v = c.to_vec();
            if t != 0 {
                for (vi, &ai) in v[..n].iter_mut().zip(&a.a) {
                    *vi = ((*vi as u16 + t * ai as u16) % q) as u8;
                }
            }
            v
        })
        .collect();
    Subspace::span(x.q(), n + 1, &moved)
}

/// `X ∩ F_q^n`, returned as a subspace of `F_q^n`.
pub fn h_map(x: &Subspace) -> Result<Subspace> {
    let n = x
        .ambient()
        .checked_sub(1)
        .ok_or_else(|| Error::Argument("ambient 0".into()))?;
    check_off_hyperplane(x, n)?;
    let q = x.q();
    let cols: Vec<&[u8]> = x.columns().collect();
    let j = cols
        .iter()
        .position(|c| c[n] != 0)
        .expect("leaves hyperplane");
    let pivot = cols[j];
    let inv = crate::gflinalg::Fq::new(pivot[n] as i64, q)
        .inv()
        .expect("nonzero")
        .value();
    let rest: Vec<Vec<u8>> = cols
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, c)| {
            let f = (c[n] as u16 * inv as u16 % q as u16) as u8;
            c[..n]
                .iter()
                .zip(&pivot[..n])
                .map(|(&a, &b)| {
                    ((a as u16 + q as u16 * q as u16 - f as u16 * b as u16) % q as u16) as u8
                })
                .collect()
        })
        .collect();
    Subspace::span(q, n, &rest)
}

/// The equivalence class `{Y : h_map(Y) = h_map(X)}`, computed as the orbit
/// of `X`; sorted.
pub fn eq_class(x: &Subspace) -> Result<Vec<Subspace>> {
    let n = x
        .ambient()
        .checked_sub(1)
        .ok_or_else(|| Error::Argument("ambient 0".into()))?;
    check_off_hyperplane(x, n)?;
    let mut orbit = BTreeSet::new();
    for a in all_vectors(x.q(), n) {
        orbit.insert(act(&GroupElement { q: x.q(), a }, x)?);
    }
    Ok(orbit.into_iter().collect())
}

/// Group elements fixing `X`, by direct count.
pub fn stabilizer(x: &Subspace) -> Result<Vec<GroupElement>> {
    let n = x
        .ambient()
        .checked_sub(1)
        .ok_or_else(|| Error::Argument("ambient 0".into()))?;
    let mut out = Vec::new();
    for g in GroupElement::all(x.q(), n) {
        if &act(&g, x)? == x {
            out.push(g);
        }
    }
    Ok(out)
}

/// `p(χ)(X) = Σ_a conj(χ(a)) · [φ(a) X]`, unnormalized.
pub fn p_chi(chi: &Character, x: &Subspace) -> Result<LatticeVector> {
    let n = chi.n();
    check_off_hyperplane(x, n)?;
    if chi.q != x.q() {
        return arg("character and subspace over different fields");
    }
    let mut out = LatticeVector::zero(chi.q as u32, n + 1);
    for g in GroupElement::all(chi.q, n) {
        out.add_term(act(&g, x)?, &chi.conj_value(&g));
    }
    Ok(out)
}

/// `θ_n` on a basis subspace `X ⊆ F_q^n`: the sum of the class of `hat(X)`.
pub fn theta_basis(x: &Subspace) -> Result<LatticeVector> {
    let h = hat(x);
    let mut out = LatticeVector::zero(x.q() as u32, x.ambient() + 1);
    let one = CycInt::one(x.q() as u32);
    for y in eq_class(&h)? {
        out.add_term(y, &one);
    }
    Ok(out)
}

/// `θ_n: V(B_q(n)) → V(B_q(n+1))`.
pub fn theta(v: &LatticeVector) -> Result<LatticeVector> {
    v.map_linear(v.ambient() + 1, theta_basis)
}

/// The unique hyperplane `X(χ)` of `F_q^n` with `p(χ)(hat X) ≠ 0`.
///
/// Exhaustive over hyperplanes; the stabilizer of `hat(Y)` is `Y` itself, so
/// only hyperplanes on which `χ` is trivial can survive and only those get
/// the full projection computed.
pub fn find_hyperplane(chi: &Character) -> Result<Subspace> {
    if chi.is_trivial() {
        return arg("find_hyperplane needs a nontrivial character");
    }
    let n = chi.n();
    let mut found = Vec::new();
    for y in enumerate_rank(n, n - 1, chi.q) {
        if y.columns().any(|c| dot(&chi.c, c, chi.q) != 0) {
            continue;
        }
        if !p_chi(chi, &hat(&y))?.is_zero() {
            found.push(y);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        k => Err(Error::Argument(format!(
            "{chi}: expected one surviving hyperplane, found {k}"
        ))),
    }
}

/// `γ_(n-1)(χ) = λ(χ) ∘ μ(X(χ))`, cached on basis subspaces of `F_q^(n-1)`.
#[derive(Debug, Clone)]
pub struct GammaMap {
    chi: Character,
    hyperplane: Subspace,
    images: HashMap<Subspace, LatticeVector>,
}

impl GammaMap {
    pub fn new(chi: &Character) -> Result<Self> {
        let hyperplane = find_hyperplane(chi)?;
        Ok(GammaMap {
            chi: chi.clone(),
            hyperplane,
            images: HashMap::new(),
        })
    }

    /// Precomputes the image of every subspace of `F_q^(n-1)`.
    pub fn complete(chi: &Character) -> Result<Self> {
        let mut g = Self::new(chi)?;
        let n = chi.n();
        for y in enumerate_all(n - 1, chi.q) {
            let img = g.compute(&y)?;
            g.images.insert(y, img);
        }
        Ok(g)
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn hyperplane(&self) -> &Subspace {
        &self.hyperplane
    }

    fn compute(&self, y: &Subspace) -> Result<LatticeVector> {
        p_chi(&self.chi, &hat(&mu_apply(&self.hyperplane, y)?))
    }

    pub fn basis_image(&self, y: &Subspace) -> Result<LatticeVector> {
        match self.images.get(y) {
            Some(v) => Ok(v.clone()),
            None => self.compute(y),
        }
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        let n = self.chi.n();
        if v.ambient() + 1 != n {
            return arg(format!(
                "γ for {} acts on V(B(F^{})), got a vector over F^{}",
                self.chi,
                n - 1,
                v.ambient()
            ));
        }
        v.map_linear(n + 1, |y| self.basis_image(y))
    }
}

/// `γ_(n-1)(χ)(v)` for `v ∈ V(B_q(n-1))`.
pub fn gamma(chi: &Character, v: &LatticeVector) -> Result<LatticeVector> {
    GammaMap::new(chi)?.apply(v)
}

/// `θ_n` cached on every subspace of `F_q^n`.
#[derive(Debug, Clone)]
pub struct ThetaMap {
    n: usize,
    images: HashMap<Subspace, LatticeVector>,
}

impl ThetaMap {
    pub fn complete(n: usize, q: u8) -> Result<Self> {
        let subs = enumerate_all(n, q);
        let images = subs
            .par_iter()
            .map(|x| theta_basis(x).map(|v| (x.clone(), v)))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(ThetaMap { n, images })
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.ambient() != self.n {
            return arg(format!(
                "θ_{} applied to a vector over F^{}",
                self.n,
                v.ambient()
            ));
        }
        v.map_linear(self.n + 1, |x| match self.images.get(x) {
            Some(img) => Ok(img.clone()),
            None => theta_basis(x),
        })
    }
}

/// Number of `X ∈ A_q(n+1)_k` fixed by `a`, by direct count.
pub fn perm_character(n: usize, k: usize, a: &GroupElement) -> Result<u64> {
    if k < 1 || k > n + 1 {
        return arg(format!("rank k = {k} outside 1..={}", n + 1));
    }
    if a.n() != n {
        return arg(format!("group element of length {} for n = {n}", a.n()));
    }
    let mut count = 0u64;
    for x in enumerate_rank(n + 1, k, a.q) {
        if x.leaves_hyperplane() && act(a, &x)? == x {
            count += 1;
        }
    }
    Ok(count)
}

/// Closed form for [`perm_character`].
pub fn perm_character_formula(n: usize, k: usize, q: u8, identity: bool) -> BigUint {
    let t = QBinomialTable::new(n, q as u64).expect("q >= 2");
    let factor = qpow(q as u64, (n + 1 - k) as u32);
    if identity {
        factor * t.get(n as i64, k as i64 - 1)
    } else {
        factor * t.get(n as i64 - 1, k as i64 - 2)
    }
}

/// Character inner product `[χ, ψ_k] = q^(-n) Σ_g conj(χ(g)) ψ_k(g)`,
/// evaluated exactly from [`perm_character`] values.
pub fn character_multiplicity(chi: &Character, k: usize) -> Result<BigInt> {
    let n = chi.n();
    let mut acc = CycInt::zero(chi.q as u32);
    for g in GroupElement::all(chi.q, n) {
        let psi = perm_character(n, k, &g)?;
        acc += &chi.conj_value(&g).scale(&BigInt::from(psi));
    }
    let order = BigInt::from(qpow(chi.q as u64, n as u32));
    acc.div_exact(&order)
        .and_then(|v| v.as_integer().cloned())
        .ok_or_else(|| Error::Argument(format!("[{chi}, ψ_{k}] = {acc}/{order} is not an integer")))
}

/// Checks the permutation character closed forms and both multiplicity
/// formulas for `1 <= k <= n+1`.
pub fn verify_permutation_character(n: usize, q: u64) -> Result<Report> {
    let qq = crate::check_prime(q)?;
    if n < 1 {
        return arg("n must be at least 1");
    }
    let t = QBinomialTable::new(n, q)?;
    let mut report = Report::new(format!("permutation character of H({}, {q})", n + 1));
    let group = GroupElement::all(qq, n);
    let mut closed = None;
    'outer: for k in 1..=n + 1 {
        for g in &group {
            let got = BigUint::from(perm_character(n, k, g)?);
            let want = perm_character_formula(n, k, qq, g.is_identity());
            if got != want {
                closed = Some(format!(
                    "k = {k}, a = {:?}: counted {got}, formula {want}",
                    g.a
                ));
                break 'outer;
            }
        }
    }
    report.record("ψ_k closed forms", closed);

    let mut trivial = None;
    let mut nontrivial = None;
    for k in 1..=n + 1 {
        let m = character_multiplicity(&Character::trivial(qq, n), k)?;
        let want = BigInt::from(t.get(n as i64, k as i64 - 1));
        if m != want && trivial.is_none() {
            trivial = Some(format!("k = {k}: {m} != {want}"));
        }
        for chi in Character::nontrivial(qq, n) {
            let m = character_multiplicity(&chi, k)?;
            let want = BigInt::from(t.get(n as i64 - 1, k as i64 - 1));
            if m != want && nontrivial.is_none() {
                nontrivial = Some(format!("{chi}, k = {k}: {m} != {want}"));
            }
        }
    }
    report.record("[trivial, ψ_k] = [n, k-1]", trivial);
    report.record("[χ, ψ_k] = [n-1, k-1] for χ nontrivial", nontrivial);
    Ok(report)
}

fn first_failure<T, F>(items: &[T], f: F) -> Result<Option<String>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync,
{
    let results: Vec<Result<Option<String>>> = items.par_iter().map(&f).collect();
    for r in results {
        if let Some(msg) = r? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

/// Pairs of same-rank vectors from two families whose inner product is not
/// `expected(i, j, rank)`.
fn check_gram<F>(
    left: &[(Subspace, LatticeVector)],
    right: &[(Subspace, LatticeVector)],
    expected: F,
) -> Result<Option<String>>
where
    F: Fn(&Subspace, &Subspace) -> CycInt + Sync,
{
    first_failure(left, |(x, vx)| {
        for (y, vy) in right {
            if x.dim() != y.dim() {
                continue;
            }
            let got = inner(vx, vy)?;
            let want = expected(x, y);
            if got != want {
                return Ok(Some(format!(
                    "⟨image of {x}, image of {y}⟩ = {got}, expected {want}"
                )));
            }
        }
        Ok(None)
    })
}

/// Verifies every claim of the decomposition
/// `V(B_q(n+1)) = V(B_q(n)) ⊕ W(0) ⊕ ⨁_χ W(χ)`.
pub fn verify_decomposition(n: usize, q: u64) -> Result<Report> {
    let qq = crate::check_prime(q)?;
    if n < 1 {
        return arg("n must be at least 1");
    }
    let p = qq as u32;
    let mut report = Report::new(format!("decomposition of V(B_{q}({}))", n + 1));
    let table = QBinomialTable::new(n + 1, q)?;

    let lower = enumerate_all(n, qq);
    let lower2 = enumerate_all(n - 1, qq);
    let upper_count = enumerate_all(n + 1, qq).len();
    let chars = Character::nontrivial(qq, n);

    let thetas: Vec<(Subspace, LatticeVector)> = lower
        .par_iter()
        .map(|x| theta_basis(x).map(|v| (x.clone(), v)))
        .collect::<Result<_>>()?;
    let gammas: Vec<(Character, Vec<(Subspace, LatticeVector)>)> = chars
        .par_iter()
        .map(|chi| {
            let g = GammaMap::complete(chi)?;
            let imgs = lower2
                .iter()
                .map(|y| g.basis_image(y).map(|v| (y.clone(), v)))
                .collect::<Result<Vec<_>>>()?;
            Ok((chi.clone(), imgs))
        })
        .collect::<Result<_>>()?;

    // dimensions
    let nonzero_theta = thetas.iter().filter(|(_, v)| !v.is_zero()).count();
    let nonzero_gamma: usize = gammas
        .iter()
        .map(|(_, imgs)| imgs.iter().filter(|(_, v)| !v.is_zero()).count())
        .sum();
    let total = lower.len() + nonzero_theta + nonzero_gamma;
    let formula =
        BigUint::from(2u32) * table.galois(n) + (qpow(q, n as u32) - 1u32) * table.galois(n - 1);
    report.record(
        "dimension count matches Goldman-Rota",
        (BigUint::from(total) != formula || BigUint::from(upper_count) != formula).then(|| {
            format!(
                "|B(n+1)| = {upper_count}, pieces give {total}, 2G(n) + (q^n - 1)G(n-1) = {formula}"
            )
        }),
    );

    // supports off the hyperplane, so orthogonal to V(B_q(n))
    let off = thetas
        .iter()
        .chain(gammas.iter().flat_map(|(_, imgs)| imgs.iter()))
        .find(|(_, v)| v.support().any(|y| !y.leaves_hyperplane()))
        .map(|(x, v)| format!("image of {x} = {v} meets the hyperplane"));
    report.record("θ and γ images lie in V(A_q(n+1))", off);

    // rank sets
    let ranks = |imgs: &[(Subspace, LatticeVector)]| -> Option<BTreeSet<usize>> {
        imgs.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(_, v)| v.rank())
            .collect()
    };
    let want0: BTreeSet<usize> = (1..=n + 1).collect();
    let got0 = ranks(&thetas);
    report.record(
        "rankset W(0) = {1..n+1}",
        (got0.as_ref() != Some(&want0)).then(|| format!("got {got0:?}")),
    );
    let want_chi: BTreeSet<usize> = (1..=n).collect();
    let bad_chi = gammas.iter().find_map(|(chi, imgs)| {
        let got = ranks(imgs);
        (got.as_ref() != Some(&want_chi)).then(|| format!("{chi}: got {got:?}"))
    });
    report.record("rankset W(χ) = {1..n} for every χ ≠ 0", bad_chi);

    // U_{n+1}(v) = U_n(v) + θ_n(v)
    let split = first_failure(&thetas, |(x, th)| {
        let lhs = up_apply(&LatticeVector::basis(&x.embed()));
        let rhs = up_apply(&LatticeVector::basis(x)).embed().try_add(th)?;
        Ok((lhs != rhs).then(|| format!("X = {x}: U_(n+1) X = {lhs}, U_n X + θ X = {rhs}")))
    })?;
    report.record("U_(n+1) = U_n + θ_n on V(B_q(n))", split);

    // θ(q U_n X) = U_{n+1} θ(X)
    let theta_lookup: HashMap<&Subspace, &LatticeVector> =
        thetas.iter().map(|(x, v)| (x, v)).collect();
    let qint = CycInt::from_int(p, q);
    let inter_theta = first_failure(&thetas, |(x, th)| {
        let ux = up_apply(&LatticeVector::basis(x)).scale(&qint);
        let lhs = ux.map_linear(n + 1, |z| Ok(theta_lookup[z].clone()))?;
        let rhs = up_apply(th);
        Ok((lhs != rhs).then(|| format!("X = {x}: θ(qUX) = {lhs}, Uθ(X) = {rhs}")))
    })?;
    report.record("θ_n intertwines qU_n and U_(n+1)", inter_theta);

    let inter_gamma = first_failure(&gammas, |(chi, imgs)| {
        let lookup: HashMap<&Subspace, &LatticeVector> = imgs.iter().map(|(y, v)| (y, v)).collect();
        for (y, gy) in imgs {
            let lhs =
                up_apply(&LatticeVector::basis(y)).map_linear(n + 1, |z| Ok(lookup[z].clone()))?;
            let rhs = up_apply(gy);
            if lhs != rhs {
                return Ok(Some(format!(
                    "{chi}, Y = {y}: γ(UY) = {lhs}, Uγ(Y) = {rhs}"
                )));
            }
        }
        Ok(None)
    })?;
    report.record("γ(χ) intertwines U_(n-1) and U_(n+1)", inter_gamma);

    // scalings on basis pairs: ⟨θX, θY⟩ = q^(n-k) δ, ⟨γX, γY⟩ = q^(n+k) δ
    let theta_scale = check_gram(&thetas, &thetas, |x, y| {
        if x == y {
            CycInt::from_int(p, BigInt::from(qpow(q, (n - x.dim()) as u32)))
        } else {
            CycInt::zero(p)
        }
    })?;
    report.record("⟨θw, θv⟩ = q^(n-k)⟨w, v⟩", theta_scale);
    let gamma_scale = first_failure(&gammas, |(chi, imgs)| {
        Ok(check_gram(imgs, imgs, |x, y| {
            if x == y {
                CycInt::from_int(p, BigInt::from(qpow(q, (n + x.dim()) as u32)))
            } else {
                CycInt::zero(p)
            }
        })?
        .map(|m| format!("{chi}: {m}")))
    })?;
    report.record("⟨γw, γv⟩ = q^(n+k)⟨w, v⟩", gamma_scale);

    // mutual orthogonality of W(0) and the W(χ), and of W(χ), W(χ') for χ ≠ χ'
    // (images of rank-k inputs have rank k+1 in both families)
    let zero = |_: &Subspace, _: &Subspace| CycInt::zero(p);
    let theta_gamma = first_failure(&gammas, |(chi, imgs)| {
        Ok(check_gram(&thetas, imgs, zero)?.map(|m| format!("W(0) vs W({chi}): {m}")))
    })?;
    report.record("W(0) ⟂ W(χ)", theta_gamma);
    let pairs: Vec<(usize, usize)> = (0..gammas.len())
        .flat_map(|i| (i + 1..gammas.len()).map(move |j| (i, j)))
        .collect();
    let gamma_gamma = first_failure(&pairs, |&(i, j)| {
        Ok(check_gram(&gammas[i].1, &gammas[j].1, zero)?
            .map(|m| format!("W({}) vs W({}): {m}", gammas[i].0, gammas[j].0)))
    })?;
    report.record("W(χ) ⟂ W(χ') for χ ≠ χ'", gamma_gamma);

    // exactly q-1 characters survive on each hyperplane
    let hyperplanes = enumerate_rank(n, n - 1, qq);
    let per_hyperplane = first_failure(&hyperplanes, |x| {
        let h = hat(x);
        let mut count = 0usize;
        for chi in &chars {
            if !p_chi(chi, &h)?.is_zero() {
                count += 1;
            }
        }
        Ok((count != q as usize - 1).then(|| format!("{x}: {count} characters survive")))
    })?;
    report.record("q-1 characters per hyperplane", per_hyperplane);

    if (q, n) == (3, 2) {
        report.extend(worked_example()?);
    }
    Ok(report)
}

/// The `q = 3, n = 2, χ(a) = ω^(a1 + 2 a2)` example: projections of the
/// hats of `<(1,0)>`, `<(0,1)>`, `<(2,1)>` vanish, `<(1,1)>` survives with
/// squared norm 27 and is the hyperplane attached to `χ`.
pub fn worked_example() -> Result<Report> {
    let mut report = Report::new("worked example q = 3, n = 2, c = (1, 2)");
    let chi = Character::new(3, vec![1, 2]);
    let line = |v: [u8; 2]| Subspace::span(3, 2, &[v.to_vec()]);
    let named = [
        ("X1", line([1, 0])?, false),
        ("X2", line([0, 1])?, false),
        ("X3", line([1, 1])?, true),
        ("X4", line([2, 1])?, false),
    ];
    for (name, x, survives) in &named {
        let v = p_chi(&chi, &hat(x))?;
        let ok = v.is_zero() != *survives;
        report.record(
            format!("p(χ)({name}^) {}", if *survives { "≠ 0" } else { "= 0" }),
            (!ok).then(|| format!("got {v}")),
        );
    }
    let v3 = p_chi(&chi, &hat(&named[2].1))?;
    let norm = norm_sq(&v3)?;
    report.record(
        "‖p(χ)(X3^)‖² = 27",
        (norm.to_u64() != Some(27)).then(|| format!("got {norm}")),
    );
    let h = find_hyperplane(&chi)?;
    report.record(
        "X(χ) = <(1,1)>",
        (h != named[2].1).then(|| format!("got {h}")),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn sub(q: u8, cols: &[&[u8]]) -> Subspace {
        let n = cols[0].len();
        Subspace::span(q, n, &cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn a_q(n1: usize, q: u8) -> Vec<Subspace> {
        enumerate_all(n1, q)
            .into_iter()
            .filter(Subspace::leaves_hyperplane)
            .collect()
    }

    #[test]
    fn action_examples() {
        let x = sub(2, &[&[0, 1]]);
        assert_eq!(act(&GroupElement::identity(2, 1), &x).unwrap(), x);
        assert_eq!(
            act(&GroupElement::new(2, vec![1]), &x).unwrap(),
            sub(2, &[&[1, 1]])
        );
        assert!(act(&GroupElement::new(2, vec![1]), &sub(2, &[&[1, 0]])).is_err());
    }

    #[test]
    fn orbit_of_hat_has_size_q_pow_n_minus_k() {
        for q in [2u8, 3] {
            for n in 0..=3usize {
                for x in enumerate_all(n, q) {
                    let orbit = eq_class(&hat(&x)).unwrap();
                    assert_eq!(orbit.len(), (q as usize).pow((n - x.dim()) as u32));
                }
            }
        }
    }

    #[test]
    fn h_map_and_classes() {
        for q in [2u8, 3] {
            for n in 0..=3usize {
                for z in enumerate_all(n, q) {
                    assert_eq!(h_map(&hat(&z)).unwrap(), z);
                }
                let all = a_q(n + 1, q);
                for x in &all {
                    let hx = h_map(x).unwrap();
                    assert_eq!(hx.dim() + 1, x.dim());
                    assert_eq!(
                        hx.embed(),
                        x.intersect(&Subspace::full(q, n).embed()).unwrap()
                    );
                    let brute: Vec<_> = all
                        .iter()
                        .filter(|y| h_map(y).unwrap() == hx)
                        .cloned()
                        .collect();
                    let cls = eq_class(x).unwrap();
                    assert_eq!(cls, brute);
                    assert_eq!(cls.len(), (q as usize).pow((n + 1 - x.dim()) as u32));
                    let stab = stabilizer(x).unwrap();
                    assert_eq!(cls.len() * stab.len(), (q as usize).pow(n as u32));
                }
            }
        }
        let line = sub(2, &[&[0, 1, 1]]);
        assert_eq!(eq_class(&line).unwrap().len(), 4);
    }

    #[test]
    fn projection_examples() {
        // trivial character sums the orbit with weight |G_X|
        let x = hat(&sub(3, &[&[1, 2]]));
        let v = p_chi(&Character::trivial(3, 2), &x).unwrap();
        let stab = stabilizer(&x).unwrap().len() as i64;
        let cls = eq_class(&x).unwrap();
        assert_eq!(v.len(), cls.len());
        for y in &cls {
            assert_eq!(v.coeff(y), CycInt::from_int(3, stab));
        }
        let report = worked_example().unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn nonzero_coefficients_are_stabilizer_order_times_roots() {
        for q in [2u8, 3] {
            for n in 1..=2usize {
                for chi in Character::nontrivial(q, n) {
                    for x in a_q(n + 1, q) {
                        let v = p_chi(&chi, &x).unwrap();
                        let g = stabilizer(&x).unwrap();
                        let trivial_on_stab = g.iter().all(|a| chi.exponent(a) == 0);
                        assert_eq!(v.is_zero(), !trivial_on_stab);
                        for (_, c) in v.terms() {
                            let (m, _) = c.as_monomial().unwrap();
                            // over F_2, -m = m·ω
                            let m = if q == 2 { m.abs() } else { m };
                            assert_eq!(m, BigInt::from(g.len()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let v = theta(&LatticeVector::basis(&Subspace::zero(2, 1))).unwrap();
        let want = LatticeVector::from_terms(
            2,
            2,
            [
                (sub(2, &[&[0, 1]]), CycInt::one(2)),
                (sub(2, &[&[1, 1]]), CycInt::one(2)),
            ],
        )
        .unwrap();
        assert_eq!(v, want);
        assert_eq!(norm_sq(&v).unwrap(), BigInt::from(2));
        let v = theta(&LatticeVector::basis(&Subspace::full(2, 1))).unwrap();
        assert_eq!(v, LatticeVector::basis(&Subspace::full(2, 2)));
    }

    #[test]
    fn hyperplane_examples() {
        assert_eq!(
            find_hyperplane(&Character::new(3, vec![1, 2])).unwrap(),
            sub(3, &[&[1, 1]])
        );
        assert_eq!(
            find_hyperplane(&Character::new(2, vec![1])).unwrap(),
            Subspace::zero(2, 1)
        );
        assert_eq!(
            find_hyperplane(&Character::new(2, vec![1, 0])).unwrap(),
            sub(2, &[&[0, 1]])
        );
        assert!(find_hyperplane(&Character::trivial(2, 2)).is_err());
    }

    #[test]
    fn hyperplane_is_kernel_and_exhaustively_unique() {
        for q in [2u8, 3] {
            for n in 1..=3usize {
                let mut per_plane: HashMap<Subspace, usize> = HashMap::new();
                for chi in Character::nontrivial(q, n) {
                    let h = find_hyperplane(&chi).unwrap();
                    let kernel: Vec<Vec<u8>> = all_vectors(q, n)
                        .filter(|x| dot(chi.vector(), x, q) == 0)
                        .collect();
                    assert_eq!(h, Subspace::span(q, n, &kernel).unwrap());
                    for y in enumerate_rank(n, n - 1, q) {
                        let nz = !p_chi(&chi, &hat(&y)).unwrap().is_zero();
                        assert_eq!(nz, y == h);
                    }
                    *per_plane.entry(h).or_default() += 1;
                }
                assert!(per_plane.values().all(|&c| c == q as usize - 1));
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let chi = Character::new(2, vec![1]);
        let v = gamma(&chi, &LatticeVector::basis(&Subspace::zero(2, 0))).unwrap();
        let want = LatticeVector::from_terms(
            2,
            2,
            [
                (sub(2, &[&[0, 1]]), CycInt::one(2)),
                (sub(2, &[&[1, 1]]), CycInt::from_int(2, -1)),
            ],
        )
        .unwrap();
        assert_eq!(v, want);
        assert_eq!(norm_sq(&v).unwrap(), BigInt::from(2));
        assert!(up_apply(&v).is_zero());
        assert!(gamma(&Character::trivial(2, 1), &v).is_err());
    }

    #[test]
    fn permutation_character_examples() {
        assert_eq!(
            perm_character(1, 1, &GroupElement::new(2, vec![1])).unwrap(),
            0
        );
        assert_eq!(
            perm_character(2, 2, &GroupElement::new(2, vec![1, 1])).unwrap(),
            2
        );
        assert_eq!(
            perm_character(2, 2, &GroupElement::new(2, vec![0, 1])).unwrap(),
            2
        );
        let all_a = a_q(3, 2).iter().filter(|x| x.dim() == 2).count() as u64;
        assert_eq!(
            perm_character(2, 2, &GroupElement::identity(2, 2)).unwrap(),
            all_a
        );
        assert!(perm_character(2, 0, &GroupElement::identity(2, 2)).is_err());
        assert!(perm_character(2, 4, &GroupElement::identity(2, 2)).is_err());
    }

    #[test]
    fn decomposition_small_cases() {
        for (n, q) in [(1usize, 2u64), (2, 2), (1, 3), (2, 3), (1, 5)] {
            let r = verify_decomposition(n, q).unwrap();
            assert!(r.all_passed(), "{r}");
        }
        let r = verify_decomposition(2, 3).unwrap();
        assert!(r.check("X(χ) = <(1,1)>").is_some());
        assert!(verify_decomposition(2, 4).is_err());
    }

    #[test]
    fn permutation_characters_small() {
        for (n, q) in [(1usize, 2u64), (2, 2), (1, 3), (2, 3)] {
            let r = verify_permutation_character(n, q).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }
}
