//! The subspace lattice `B_q(n)`, its up operator, and formal sums of
//! subspaces with coefficients in `Z[ω]`.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::CycInt;
use crate::error::{arg, Error, Result};
use crate::gflinalg::{all_vectors, Subspace};

/// All `k`-dimensional subspaces of `F_q^n`, each once, ordered by pivot
/// rows and then by free entries read column by column.
pub fn enumerate_rank(n: usize, k: usize, q: u8) -> Vec<Subspace> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free slots: (column j, row i) with i > pivot_j and i not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|j| {
                let pivots = &pivots;
                (pivots[j] + 1..n)
                    .filter(move |i| !pivots.contains(i))
                    .map(move |i| (j, i))
            })
            .collect();
        for values in all_vectors(q, free.len()) {
            let mut cols = vec![vec![0u8; n]; k];
            for (j, &p) in pivots.iter().enumerate() {
                cols[j][p] = 1;
            }
            for (&(j, i), &x) in free.iter().zip(&values) {
                cols[j][i] = x;
            }
            out.push(Subspace::from_snf_columns(q, n, &cols).expect("constructed in normal form"));
        }
    }
    out
}

/// Every subspace of `F_q^n`, rank by rank.
pub fn enumerate_all(n: usize, q: u8) -> Vec<Subspace> {
    (0..=n).flat_map(|k| enumerate_rank(n, k, q)).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The subspaces covering `x`, sorted.
///
/// Each cover is `span(x, v)` for exactly one nonzero `v` that vanishes on
/// the pivot rows of `x` and has leading entry 1, so no deduplication is
/// needed.
pub fn covers_of(x: &Subspace) -> Vec<Subspace> {
    let q = x.q();
    let pivots = x.pivots();
    let mut out: Vec<Subspace> = all_vectors(q, x.ambient())
        .filter(|v| {
            pivots.iter().all(|&r| v[r as usize] == 0) && v.iter().find(|&&e| e != 0) == Some(&1)
        })
        .map(|v| x.extend(&v))
        .collect();
    out.sort();
    out
}

/// An element of `V(B_q(n))`: a finite formal sum of subspaces.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeVector {
    prime: u32,
    n: usize,
    terms: BTreeMap<Subspace, CycInt>,
}

impl LatticeVector {
    pub fn zero(prime: u32, n: usize) -> Self {
        LatticeVector {
            prime,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `[x]`.
    pub fn basis(x: &Subspace) -> Self {
        let mut v = Self::zero(x.q() as u32, x.ambient());
        v.terms.insert(x.clone(), CycInt::one(x.q() as u32));
        v
    }

    pub fn from_terms(
        prime: u32,
        n: usize,
        terms: impl IntoIterator<Item = (Subspace, CycInt)>,
    ) -> Result<Self> {
        let mut v = Self::zero(prime, n);
        for (x, c) in terms {
            v.try_add_term(x, &c)?;
        }
        Ok(v)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Subspace, CycInt> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &Subspace) -> CycInt {
        self.terms
            .get(x)
            .cloned()
            .unwrap_or_else(|| CycInt::zero(self.prime))
    }

    pub fn support(&self) -> impl Iterator<Item = &Subspace> {
        self.terms.keys()
    }

    /// Common dimension of the support, if there is one. The zero vector
    /// is homogeneous but has no rank.
    pub fn rank(&self) -> Option<usize> {
        let mut dims = self.terms.keys().map(Subspace::dim);
        let first = dims.next()?;
        dims.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.rank().is_some()
    }

    fn check_term(&self, x: &Subspace, c: &CycInt) -> Result<()> {
        if x.ambient() != self.n || x.q() as u32 != self.prime || c.prime() != self.prime {
            return arg(format!(
                "term {x} with coefficient in Z[ω_{}] added to a vector over F_{}^{}",
                c.prime(),
                self.prime,
                self.n
            ));
        }
        Ok(())
    }

    pub fn try_add_term(&mut self, x: Subspace, c: &CycInt) -> Result<()> {
        self.check_term(&x, c)?;
        self.add_term(x, c);
        Ok(())
    }

    /// Adds `c·[x]`, dropping the entry if it cancels.
    pub(crate) fn add_term(&mut self, x: Subspace, c: &CycInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Overwrites one coefficient (zero removes the term).
    pub fn set_coeff(&mut self, x: Subspace, c: CycInt) -> Result<()> {
        self.check_term(&x, &c)?;
        if c.is_zero() {
            self.terms.remove(&x);
        } else {
            self.terms.insert(x, c);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &LatticeVector) -> Result<()> {
        if self.prime != other.prime || self.n != other.n {
            return arg(format!(
                "vectors over F_{}^{} and F_{}^{}",
                self.prime, self.n, other.prime, other.n
            ));
        }
        Ok(())
    }

    pub fn add_assign_scaled(&mut self, other: &LatticeVector, s: &CycInt) -> Result<()> {
        self.check_compatible(other)?;
        for (x, c) in &other.terms {
            self.add_term(x.clone(), &(c * s));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        let mut out = self.clone();
        out.add_assign_scaled(other, &CycInt::one(self.prime))?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-&CycInt::one(self.prime))?;
        Ok(out)
    }

    pub fn scale(&self, s: &CycInt) -> LatticeVector {
        let mut out = Self::zero(self.prime, self.n);
        if s.is_zero() {
            return out;
        }
        for (x, c) in &self.terms {
            let p = c * s;
            if !p.is_zero() {
                out.terms.insert(x.clone(), p);
            }
        }
        out
    }

    pub fn scale_int(&self, s: &BigInt) -> LatticeVector {
        self.scale(&CycInt::from_int(self.prime, s.clone()))
    }

    /// The same vector viewed in `V(B_q(n+1))`.
    pub fn embed(&self) -> LatticeVector {
        LatticeVector {
            prime: self.prime,
            n: self.n + 1,
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.embed(), c.clone()))
                .collect(),
        }
    }

    /// Linear extension of a map on basis subspaces.
    pub fn map_linear<F>(&self, target_n: usize, mut f: F) -> Result<LatticeVector>
    where
        F: FnMut(&Subspace) -> Result<LatticeVector>,
    {
        let mut out = Self::zero(self.prime, target_n);
        for (x, c) in &self.terms {
            let image = f(x)?;
            out.add_assign_scaled(&image, c)?;
        }
        Ok(out)
    }

    /// The homogeneous component of rank `k`.
    pub fn component(&self, k: usize) -> LatticeVector {
        LatticeVector {
            prime: self.prime,
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(x, _)| x.dim() == k)
                .map(|(x, c)| (x.clone(), c.clone()))
                .collect(),
        }
    }
}

/// `U`: linear extension of `x ↦ Σ_{y covers x} y`.
pub fn up_apply(v: &LatticeVector) -> LatticeVector {
    up_apply_with(v, covers_of)
}

/// [`up_apply`] with a caller-supplied cover function, e.g. a memoized one.
pub fn up_apply_with<F>(v: &LatticeVector, mut covers: F) -> LatticeVector
where
    F: FnMut(&Subspace) -> Vec<Subspace>,
{
    let mut out = LatticeVector::zero(v.prime, v.n);
    for (x, c) in &v.terms {
        for y in covers(x) {
            out.add_term(y, c);
        }
    }
    out
}

/// Hermitian inner product `Σ v(X)·conj(w(X))`.
pub fn inner(v: &LatticeVector, w: &LatticeVector) -> Result<CycInt> {
    v.check_compatible(w)?;
    let (small, large, swap) = if v.len() <= w.len() {
        (v, w, false)
    } else {
        (w, v, true)
    };
    let mut acc = CycInt::zero(v.prime);
    for (x, a) in &small.terms {
        if let Some(b) = large.terms.get(x) {
            let prod = if swap { b * &a.conj() } else { a * &b.conj() };
            acc += &prod;
        }
    }
    Ok(acc)
}

/// `⟨v, v⟩` as a rational integer. Errors if the value is not rational,
/// which cannot happen when every coefficient is of the form `m·ω^j`.
pub fn norm_sq(v: &LatticeVector) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    let mut general = CycInt::zero(v.prime);
    let mut all_monomial = true;
    for c in v.terms.values() {
        match c.as_monomial() {
            Some((m, _)) if all_monomial => acc += &m * &m,
            _ => {
                all_monomial = false;
                general += &c.abs_sq();
            }
        }
    }
    if all_monomial {
        return Ok(acc);
    }
    let total = &general + &CycInt::from_int(v.prime, acc);
    total
        .as_integer()
        .cloned()
        .ok_or_else(|| Error::Argument(format!("⟨v, v⟩ = {total} is not a rational integer")))
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){x}")?;
        }
        Ok(())
    }
}
