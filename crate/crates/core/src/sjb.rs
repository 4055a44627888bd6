//! Inductive construction of an orthogonal symmetric Jordan basis `J_q(n)`
//! of `V(B_q(n))` with respect to the up operator, and its verifier.
//!
//! `J_q(m+1)` is assembled from `J_q(m)` and `J_q(m-1)`:
//!
//! * every chain `(x_k, ..., x_(m-k))` of `J_q(m)` and its image
//!   `x̄_u = θ_m(x_u)` are recombined into the chains
//!   `y_l = x_l + [l-k] x̄_(l-1)` (`k <= l <= m+1-k`) and
//!   `z_l = -q^m x_l + q^(l+k-1) [m-l-k+1] x̄_(l-1)` (`k+1 <= l <= m-k`);
//! * every chain of `J_q(m-1)` is pushed through `γ(χ)` for each nontrivial
//!   character `χ`.
//!
//! Vectors are kept unnormalized, so all coefficients stay in `Z[ω]`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;

use crate::cyclotomic::CycInt;
use crate::error::{arg, Result};
use crate::gflinalg::Subspace;
use crate::haction::{Character, GammaMap, ThetaMap};
use crate::lattice::{
    covers_of, enumerate_all, enumerate_rank, inner, norm_sq, up_apply_with, LatticeVector,
};
use crate::qcomb::{qint, qint_signed, qpow, QBinomialTable};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanChain {
    pub start_rank: usize,
    /// `x_k, ..., x_(n-k)`; entry `i` has rank `start_rank + i`.
    pub vectors: Vec<LatticeVector>,
}

impl JordanChain {
    pub fn end_rank(&self) -> usize {
        self.start_rank + self.vectors.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sjb {
    pub q: u8,
    pub n: usize,
    pub chains: Vec<JordanChain>,
}

impl Sjb {
    pub fn vector_count(&self) -> usize {
        self.chains.iter().map(JordanChain::len).sum()
    }

    /// `J_q(n, m)`: the rank-`m` vectors, tagged with their chain's start rank.
    pub fn rank_slice(&self, m: usize) -> Vec<(usize, &LatticeVector)> {
        self.chains
            .iter()
            .filter(|c| c.start_rank <= m && m <= c.end_rank())
            .map(|c| (c.start_rank, &c.vectors[m - c.start_rank]))
            .collect()
    }

    /// Number of chains per start rank, indexed by rank.
    pub fn chain_profile(&self) -> Vec<usize> {
        let mut prof = vec![0usize; self.n + 1];
        for c in &self.chains {
            prof[c.start_rank] += 1;
        }
        prof
    }
}

fn base(q: u8, n: usize) -> Sjb {
    let vectors = if n == 0 {
        vec![LatticeVector::basis(&Subspace::zero(q, 0))]
    } else {
        vec![
            LatticeVector::basis(&Subspace::zero(q, 1)),
            LatticeVector::basis(&Subspace::full(q, 1)),
        ]
    };
    Sjb {
        q,
        n,
        chains: vec![JordanChain {
            start_rank: 0,
            vectors,
        }],
    }
}

/// Recombines one chain of `J_q(m)` with its θ-image into the chains of
/// `V(B_q(m)) ⊕ W(0)`.
fn splice(chain: &JordanChain, theta: &ThetaMap, q: u8, m: usize) -> Result<Vec<JordanChain>> {
    let p = q as u32;
    let k = chain.start_rank;
    let xs: Vec<LatticeVector> = chain.vectors.iter().map(LatticeVector::embed).collect();
    let bars: Vec<LatticeVector> = chain
        .vectors
        .iter()
        .map(|x| theta.apply(x))
        .collect::<Result<_>>()?;
    if 2 * k == m {
        return Ok(vec![JordanChain {
            start_rank: k,
            vectors: vec![xs[0].clone(), bars[0].clone()],
        }]);
    }
    let zero = LatticeVector::zero(p, m + 1);
    let x_at = |l: usize| {
        if l >= k && l <= m - k {
            &xs[l - k]
        } else {
            &zero
        }
    };
    let bar_at = |l: usize| {
        if l >= k && l <= m - k {
            &bars[l - k]
        } else {
            &zero
        }
    };
    let int = |v: BigInt| CycInt::from_int(p, v);

    let mut ys = Vec::with_capacity(m + 2 - 2 * k);
    for l in k..=m + 1 - k {
        let mut y = x_at(l).clone();
        if l > k {
            y.add_assign_scaled(bar_at(l - 1), &int(qint_signed((l - k) as u32, q as u64)))?;
        }
        ys.push(y);
    }
    let mut zs = Vec::with_capacity(m - 2 * k);
    let minus_qm = int(-BigInt::from(qpow(q as u64, m as u32)));
    for l in k + 1..=m - k {
        let mut z = x_at(l).scale(&minus_qm);
        let c = BigInt::from(
            qpow(q as u64, (l + k - 1) as u32) * qint((m + 1 - l - k) as u32, q as u64),
        );
        z.add_assign_scaled(bar_at(l - 1), &int(c))?;
        zs.push(z);
    }
    Ok(vec![
        JordanChain {
            start_rank: k,
            vectors: ys,
        },
        JordanChain {
            start_rank: k + 1,
            vectors: zs,
        },
    ])
}

/// `J_q(m+1)` from `J_q(m)` and `J_q(m-1)`.
fn step(prev: &Sjb, prev2: &Sjb) -> Result<Sjb> {
    let (q, m) = (prev.q, prev.n);
    let theta = ThetaMap::complete(m, q)?;
    let spliced: Vec<Vec<JordanChain>> = prev
        .chains
        .par_iter()
        .map(|c| splice(c, &theta, q, m))
        .collect::<Result<_>>()?;
    let lifted: Vec<Vec<JordanChain>> = Character::nontrivial(q, m)
        .par_iter()
        .map(|chi| {
            let g = GammaMap::complete(chi)?;
            prev2
                .chains
                .iter()
                .map(|c| {
                    Ok(JordanChain {
                        start_rank: c.start_rank + 1,
                        vectors: c
                            .vectors
                            .iter()
                            .map(|x| g.apply(x))
                            .collect::<Result<_>>()?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut chains: Vec<JordanChain> = spliced.into_iter().chain(lifted).flatten().collect();
    chains.sort_by_key(|c| c.start_rank);
    Ok(Sjb {
        q,
        n: m + 1,
        chains,
    })
}

/// Builds `J_q(n)`; `q` must be prime.
pub fn construct_sjb(n: usize, q: u64) -> Result<Sjb> {
    let q = crate::check_prime(q)?;
    let mut older = base(q, 0);
    if n == 0 {
        return Ok(older);
    }
    let mut newer = base(q, 1);
    for _ in 1..n {
        let next = step(&newer, &older)?;
        older = std::mem::replace(&mut newer, next);
    }
    Ok(newer)
}

/// Squared singular value `q^k [u+1-k] [n-k-u]`.
pub fn singular_value_sq(q: u64, n: usize, k: usize, u: usize) -> Result<BigUint> {
    if q < 2 {
        return arg("q must be at least 2");
    }
    if !(k <= u && u + k < n) {
        return arg(format!(
            "need k <= u < n - k, got n = {n}, k = {k}, u = {u}"
        ));
    }
    Ok(qpow(q, k as u32) * qint((u + 1 - k) as u32, q) * qint((n - k - u) as u32, q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every check on every chain, vector and same-rank pair.
    Full,
    /// Counting checks on everything; chain, norm and orthogonality checks on
    /// an evenly spaced sample.
    Spot,
    None,
}

/// Chains sampled in spot mode.
const SPOT_CHAINS: usize = 48;

/// Memoized cover relation for all of `B_q(n)`.
pub struct CoverTable(HashMap<Subspace, Vec<Subspace>>);

impl CoverTable {
    pub fn new(n: usize, q: u8) -> Self {
        CoverTable(
            enumerate_all(n, q)
                .into_par_iter()
                .map(|x| {
                    let c = covers_of(&x);
                    (x, c)
                })
                .collect(),
        )
    }

    pub fn up(&self, v: &LatticeVector) -> LatticeVector {
        up_apply_with(v, |x| match self.0.get(x) {
            Some(c) => c.clone(),
            None => covers_of(x),
        })
    }
}

fn first_error<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Option<String> + Sync + Send,
) -> Option<String> {
    items.par_iter().find_map_first(f)
}

/// Checks every defining property of an orthogonal SJB of `V(B_q(n))` with
/// the stated singular values. Failures name the chain and rank.
pub fn verify_sjb(b: &Sjb, mode: VerifyMode) -> Report {
    let (q, n, p) = (b.q, b.n, b.q as u32);
    let mut report = Report::new(format!("symmetric Jordan basis J_{q}({n})"));
    if mode == VerifyMode::None {
        return report;
    }
    let table = QBinomialTable::new(n, q as u64).expect("prime q");

    let indexed: Vec<(usize, &JordanChain)> = b.chains.iter().enumerate().collect();
    let sampled: Vec<(usize, &JordanChain)> = match mode {
        VerifyMode::Full => indexed.clone(),
        _ => {
            let stride = indexed.len().div_ceil(SPOT_CHAINS).max(1);
            indexed.iter().copied().step_by(stride).collect()
        }
    };

    // shapes: ambient, field, homogeneity and rank
    let shape = first_error(&indexed, |&(ci, c)| {
        if c.vectors.is_empty() {
            return Some(format!("chain {ci} is empty"));
        }
        c.vectors.iter().enumerate().find_map(|(i, v)| {
            let u = c.start_rank + i;
            if v.prime() != p || v.ambient() != n {
                Some(format!(
                    "chain {ci}, rank {u}: vector lives over F_{}^{}",
                    v.prime(),
                    v.ambient()
                ))
            } else if v.is_zero() {
                Some(format!("chain {ci}, rank {u}: zero vector"))
            } else if v.rank() != Some(u) {
                Some(format!("chain {ci}, rank {u}: not homogeneous of rank {u}"))
            } else {
                None
            }
        })
    });
    let shapes_ok = shape.is_none();
    report.record("homogeneous nonzero vectors of consecutive ranks", shape);

    let sym = first_error(&indexed, |&(ci, c)| {
        (c.start_rank + c.end_rank() != n).then(|| {
            format!(
                "chain {ci}: ranks {}..{} do not sum to {n}",
                c.start_rank,
                c.end_rank()
            )
        })
    });
    report.record("chains are symmetric", sym);

    let mono = first_error(&indexed, |&(ci, c)| {
        c.vectors.iter().enumerate().find_map(|(i, v)| {
            v.terms()
                .find(|(_, a)| a.as_monomial().is_none())
                .map(|(x, a)| {
                    format!(
                        "chain {ci}, rank {}: coefficient {a} of {x} is not m·ω^j",
                        c.start_rank + i
                    )
                })
        })
    });
    report.record("coefficients are integer multiples of roots of unity", mono);

    let prof = b.chain_profile();
    let mut counts = None;
    for (k, &got) in prof.iter().enumerate() {
        let want = if 2 * k <= n {
            table.get(n as i64, k as i64) - table.get(n as i64, k as i64 - 1)
        } else {
            BigUint::zero()
        };
        if BigUint::from(got) != want {
            counts = Some(format!("start rank {k}: {got} chains, expected {want}"));
            break;
        }
    }
    report.record("chain counts [n,k] - [n,k-1]", counts);

    let total = b.vector_count();
    let galois = table.galois(n);
    report.record(
        "vector count equals the Galois number",
        (BigUint::from(total) != galois).then(|| format!("{total} vectors, G_{q}({n}) = {galois}")),
    );

    if !shapes_ok {
        report.fail("Jordan chain condition", "skipped: malformed vectors");
        report.fail("singular values", "skipped: malformed vectors");
        report.fail("pairwise orthogonality", "skipped: malformed vectors");
        return report;
    }

    let covers = CoverTable::new(n, q);
    let jordan = first_error(&sampled, |&(ci, c)| {
        for (i, v) in c.vectors.iter().enumerate() {
            let u = c.start_rank + i;
            let up = covers.up(v);
            match c.vectors.get(i + 1) {
                Some(next) if &up != next => {
                    return Some(format!("chain {ci}, rank {u}: U x_{u} != x_{}", u + 1));
                }
                None if !up.is_zero() => {
                    return Some(format!(
                        "chain {ci}, rank {u}: U x_{u} != 0 at the chain end"
                    ));
                }
                _ => {}
            }
        }
        None
    });
    report.record("Jordan chain condition", jordan);

    let sv = first_error(&sampled, |&(ci, c)| {
        let norms: Vec<BigInt> = match c.vectors.iter().map(norm_sq).collect::<Result<_>>() {
            Ok(v) => v,
            Err(e) => return Some(format!("chain {ci}: {e}")),
        };
        for (i, w) in norms.windows(2).enumerate() {
            let u = c.start_rank + i;
            let s = singular_value_sq(q as u64, n, c.start_rank, u).expect("u in chain range");
            if w[1] != &w[0] * BigInt::from(s.clone()) {
                return Some(format!(
                    "chain {ci}, rank {u}: ‖x_{}‖² = {}, ‖x_{u}‖² = {}, ratio should be {s}",
                    u + 1,
                    w[1],
                    w[0]
                ));
            }
        }
        None
    });
    report.record("singular values", sv);

    // orthogonality: vectors of different rank have disjoint supports
    let mut orth = None;
    for m in 0..=n {
        let slice: Vec<(usize, &LatticeVector)> = b
            .chains
            .iter()
            .enumerate()
            .filter(|(_, c)| c.start_rank <= m && m <= c.end_rank())
            .map(|(ci, c)| (ci, &c.vectors[m - c.start_rank]))
            .collect();
        let left: Vec<usize> = match mode {
            VerifyMode::Full => (0..slice.len()).collect(),
            _ => {
                let stride = slice.len().div_ceil(SPOT_CHAINS).max(1);
                (0..slice.len()).step_by(stride).collect()
            }
        };
        let full = mode == VerifyMode::Full;
        orth = first_error(&left, |&i| {
            let (ci, vi) = slice[i];
            let others = if full { &slice[i + 1..] } else { &slice[..] };
            others.iter().find_map(|&(cj, vj)| {
                if cj == ci {
                    return None;
                }
                match inner(vi, vj) {
                    Ok(z) if z.is_zero() => None,
                    Ok(z) => Some(format!("rank {m}: ⟨chain {ci}, chain {cj}⟩ = {z}")),
                    Err(e) => Some(e.to_string()),
                }
            })
        });
        if orth.is_some() {
            break;
        }
    }
    report.record("pairwise orthogonality", orth);

    if mode == VerifyMode::Full {
        let mut span = None;
        for m in 0..=n {
            let slice: Vec<&LatticeVector> = b.rank_slice(m).into_iter().map(|(_, v)| v).collect();
            let basis = enumerate_rank(n, m, q);
            let r = rank_mod_prime(&slice, &basis, p);
            if r != basis.len() {
                span = Some(format!(
                    "rank {m}: rank {r} of {} slice vectors, need {}",
                    slice.len(),
                    basis.len()
                ));
                break;
            }
        }
        report.record("rank slices span V(B_q(n)_m)", span);
    }
    report
}

fn is_prime_u64(x: u64) -> bool {
    x >= 2
        && (2..)
            .take_while(|d: &u64| d * d <= x)
            .all(|d| !x.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// A prime `l ≡ 1 (mod p)` just above 2^30 and a primitive `p`-th root of
/// unity `z` in `F_l`, so that `ω ↦ z` is a ring map `Z[ω] → F_l`.
pub fn reduction_prime(p: u32) -> (u64, u64) {
    let p64 = p as u64;
    let mut l = (1u64 << 30) / p64 * p64 + 1;
    while !is_prime_u64(l) {
        l += p64;
    }
    let z = (2..l)
        .map(|g| pow_mod(g, (l - 1) / p64, l))
        .find(|&z| z != 1)
        .expect("F_l* is cyclic of order divisible by p");
    (l, z)
}

/// Rank of the coefficient matrix of `vectors` (columns indexed by `basis`)
/// after reduction to `F_l`. This is a lower bound for the rank over
/// `Q(ω)`, so reaching `basis.len()` proves the vectors span.
pub fn rank_mod_prime(vectors: &[&LatticeVector], basis: &[Subspace], p: u32) -> usize {
    let (l, z) = reduction_prime(p);
    let index: HashMap<&Subspace, usize> = basis.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0u64; basis.len()];
            for (x, c) in v.terms() {
                if let Some(&i) = index.get(x) {
                    row[i] = c.reduce_mod(l, z);
                }
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..basis.len() {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], l - 2, l);
        let pivot: Vec<u64> = rows[rank]
            .iter()
            .map(|&x| (x as u128 * inv as u128 % l as u128) as u64)
            .collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    let sub = (f as u128 * y as u128 % l as u128) as u64;
                    *x = (*x + l - sub) % l;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Squared-norm ratio table `k ↦ (‖x_(u+1)‖²/‖x_u‖²)_u`, read off the chains.
pub fn ratio_table(b: &Sjb) -> Result<Vec<(usize, Vec<BigUint>)>> {
    let mut out: Vec<(usize, Vec<BigUint>)> = Vec::new();
    for c in &b.chains {
        if out.iter().any(|(k, _)| *k == c.start_rank) {
            continue;
        }
        let norms: Vec<BigInt> = c.vectors.iter().map(norm_sq).collect::<Result<_>>()?;
        let ratios = norms
            .windows(2)
            .map(|w| {
                let r = &w[1] / &w[0];
                r.to_biguint().unwrap_or_default()
            })
            .collect();
        out.push((c.start_rank, ratios));
    }
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::up_apply;

    fn line(q: u8, v: &[u8]) -> Subspace {
        Subspace::span(q, v.len(), &[v.to_vec()]).unwrap()
    }

    fn int(m: i64) -> CycInt {
        CycInt::from_int(2, m)
    }

    #[test]
    fn base_cases() {
        let b = construct_sjb(0, 3).unwrap();
        assert_eq!(b.chains.len(), 1);
        assert_eq!(b.vector_count(), 1);
        let b = construct_sjb(1, 2).unwrap();
        assert_eq!(b.chains.len(), 1);
        assert_eq!(
            b.chains[0].vectors[0],
            LatticeVector::basis(&Subspace::zero(2, 1))
        );
        assert_eq!(
            b.chains[0].vectors[1],
            LatticeVector::basis(&Subspace::full(2, 1))
        );
        assert!(construct_sjb(2, 4).is_err());
    }

    #[test]
    fn two_dimensional_binary_basis() {
        let b = construct_sjb(2, 2).unwrap();
        let (e1, e2, e12) = (line(2, &[1, 0]), line(2, &[0, 1]), line(2, &[1, 1]));
        let chain = &b.chains[0];
        assert_eq!(chain.start_rank, 0);
        assert_eq!(
            chain.vectors[0],
            LatticeVector::basis(&Subspace::zero(2, 2))
        );
        let mid = LatticeVector::from_terms(
            2,
            2,
            [
                (e1.clone(), int(1)),
                (e2.clone(), int(1)),
                (e12.clone(), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(chain.vectors[1], mid);
        assert_eq!(
            chain.vectors[2],
            LatticeVector::basis(&Subspace::full(2, 2)).scale(&int(3))
        );

        let singles: Vec<&LatticeVector> = b.chains[1..].iter().map(|c| &c.vectors[0]).collect();
        assert_eq!(singles.len(), 2);
        let z = LatticeVector::from_terms(
            2,
            2,
            [(e1, int(-2)), (e2.clone(), int(1)), (e12.clone(), int(1))],
        )
        .unwrap();
        let g = LatticeVector::from_terms(2, 2, [(e2, int(1)), (e12, int(-1))]).unwrap();
        assert_eq!(singles, vec![&z, &g]);
        assert!(verify_sjb(&b, VerifyMode::Full).all_passed());
    }

    #[test]
    fn chain_profile_n3() {
        let b = construct_sjb(3, 2).unwrap();
        assert_eq!(b.chain_profile(), vec![1, 6, 0, 0]);
    }

    #[test]
    fn singular_value_examples() {
        assert_eq!(singular_value_sq(2, 2, 0, 0).unwrap(), BigUint::from(3u32));
        assert_eq!(singular_value_sq(2, 2, 0, 1).unwrap(), BigUint::from(3u32));
        assert!(singular_value_sq(3, 2, 1, 1).is_err());
        assert_eq!(singular_value_sq(2, 3, 1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(singular_value_sq(3, 2, 0, 0).unwrap(), BigUint::from(4u32));
        assert!(singular_value_sq(2, 4, 2, 2).is_err());
        assert!(singular_value_sq(2, 4, 1, 0).is_err());
    }

    #[test]
    fn ternary_ratio_table() {
        let b = construct_sjb(2, 3).unwrap();
        assert!(verify_sjb(&b, VerifyMode::Full).all_passed());
        let t = ratio_table(&b).unwrap();
        assert_eq!(t[0], (0, vec![BigUint::from(4u32), BigUint::from(4u32)]));
    }

    #[test]
    fn small_bases_verify() {
        for (n, q) in [(3usize, 2u64), (4, 2), (3, 3), (2, 5), (3, 5)] {
            let b = construct_sjb(n, q).unwrap();
            let r = verify_sjb(&b, VerifyMode::Full);
            assert!(r.all_passed(), "{r}");
            let r = verify_sjb(&b, VerifyMode::Spot);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn tampering_is_detected() {
        let mut b = construct_sjb(3, 2).unwrap();
        let v = &mut b.chains[1].vectors[0];
        let (x, c) = v
            .terms()
            .next()
            .map(|(x, c)| (x.clone(), c.clone()))
            .unwrap();
        v.set_coeff(x, &c + &int(1)).unwrap();
        let r = verify_sjb(&b, VerifyMode::Full);
        assert!(!r.all_passed());
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(
            failed.contains(&"Jordan chain condition")
                || failed.contains(&"pairwise orthogonality")
        );
    }

    #[test]
    fn reduction_prime_has_root_of_unity() {
        for p in [2u32, 3, 5, 7] {
            let (l, z) = reduction_prime(p);
            assert_eq!(l % p as u64, 1);
            assert_ne!(z, 1);
            assert_eq!(pow_mod(z, p as u64, l), 1);
        }
    }

    #[test]
    fn rank_mod_prime_detects_dependence() {
        let subs = enumerate_rank(2, 1, 2);
        let a = LatticeVector::basis(&subs[0]);
        let b = LatticeVector::basis(&subs[1]);
        let c = a.try_add(&b).unwrap();
        assert_eq!(rank_mod_prime(&[&a, &b, &c], &subs, 2), 2);
        let d = up_apply(&LatticeVector::basis(&Subspace::zero(2, 2)));
        assert_eq!(rank_mod_prime(&[&a, &b, &d], &subs, 2), 3);
    }
}
