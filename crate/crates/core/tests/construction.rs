//! Identities used while splicing `J_q(n)` into `J_q(n+1)`, checked on the
//! constructed bases themselves.

use num_bigint::BigInt;
use proptest::prelude::*;

use qlattice::haction::theta;
use qlattice::lattice::{enumerate_rank, inner, norm_sq, up_apply};
use qlattice::qcomb::q_int;
use qlattice::sjb::{construct_sjb, rank_mod_prime, Sjb};
use qlattice::{CycInt, LatticeVector};

const CASES: [(u64, usize); 6] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];

fn int(p: u32, m: impl Into<BigInt>) -> CycInt {
    CycInt::from_int(p, m)
}

fn qi(k: usize, q: u64) -> BigInt {
    BigInt::from(q_int(k as i64, q).unwrap())
}

fn qp(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

#[test]
fn bar_vectors_shift_under_up() {
    for (q, n) in CASES {
        let b = construct_sjb(n, q).unwrap();
        let p = q as u32;
        for c in &b.chains {
            let bars: Vec<LatticeVector> = c.vectors.iter().map(|x| theta(x).unwrap()).collect();
            for (i, (x, xb)) in c.vectors.iter().zip(&bars).enumerate() {
                let u = c.start_rank + i;
                let next = bars
                    .get(i + 1)
                    .cloned()
                    .unwrap_or_else(|| LatticeVector::zero(p, n + 1));
                assert_eq!(
                    up_apply(xb),
                    next.scale(&int(p, q)),
                    "U x̄_{u} at q = {q}, n = {n}"
                );
                assert_eq!(
                    norm_sq(xb).unwrap(),
                    qp(q, n - u) * norm_sq(x).unwrap(),
                    "‖x̄_{u}‖² at q = {q}, n = {n}"
                );
                let xe = x.embed();
                let up_next = c
                    .vectors
                    .get(i + 1)
                    .map(LatticeVector::embed)
                    .unwrap_or_else(|| LatticeVector::zero(p, n + 1));
                assert_eq!(
                    up_apply(&xe),
                    up_next.try_add(xb).unwrap(),
                    "U x_{u} in n + 1 at q = {q}, n = {n}"
                );
                assert!(xe.support().all(|s| !s.leaves_hyperplane()));
                assert!(xb.support().all(|s| s.leaves_hyperplane()));
            }
        }
    }
}

/// The `V(B_q(n)) ⊕ W(0)` chains built straight from the splice formulas.
fn spliced(b: &Sjb) -> Vec<(usize, Vec<LatticeVector>)> {
    let (q, n, p) = (b.q as u64, b.n, b.q as u32);
    let mut out = Vec::new();
    for c in &b.chains {
        let k = c.start_rank;
        let zero = LatticeVector::zero(p, n + 1);
        let x = |l: usize| {
            if (k..=n - k).contains(&l) {
                c.vectors[l - k].embed()
            } else {
                zero.clone()
            }
        };
        let xb = |l: usize| {
            if (k..=n - k).contains(&l) {
                theta(&c.vectors[l - k]).unwrap()
            } else {
                zero.clone()
            }
        };
        let ys: Vec<LatticeVector> = (k..=n + 1 - k)
            .map(|l| {
                let bar = if l > k {
                    xb(l - 1).scale(&int(p, qi(l - k, q)))
                } else {
                    zero.clone()
                };
                x(l).try_add(&bar).unwrap()
            })
            .collect();
        let zs: Vec<LatticeVector> = (k + 1..=n - k)
            .map(|l| {
                let a = x(l).scale(&int(p, -qp(q, n)));
                let c = qp(q, l + k - 1) * qi(n - l - k + 1, q);
                a.try_add(&xb(l - 1).scale(&int(p, c))).unwrap()
            })
            .collect();
        for (l, (y, z)) in ys[1..].iter().zip(&zs).enumerate() {
            assert!(
                inner(y, z).unwrap().is_zero(),
                "⟨y, z⟩ at rank {} of chain from {k}",
                k + 1 + l
            );
        }
        out.push((k, ys));
        if !zs.is_empty() {
            out.push((k + 1, zs));
        }
    }
    out
}

#[test]
fn splice_chains_appear_in_the_next_level() {
    for (q, n) in CASES {
        let b = construct_sjb(n, q).unwrap();
        let next = construct_sjb(n + 1, q).unwrap();
        for (k, vectors) in spliced(&b) {
            assert!(
                next.chains
                    .iter()
                    .any(|c| c.start_rank == k && c.vectors == vectors),
                "spliced chain from rank {k} missing from J_{q}({})",
                n + 1
            );
        }
    }
}

#[test]
fn rank_slices_span() {
    for (q, n_max) in [(2u64, 5usize), (3, 4)] {
        for n in 0..=n_max {
            let b = construct_sjb(n, q).unwrap();
            for m in 0..=n {
                let slice: Vec<&LatticeVector> =
                    b.rank_slice(m).into_iter().map(|(_, v)| v).collect();
                let basis = enumerate_rank(n, m, q as u8);
                assert_eq!(slice.len(), basis.len());
                assert_eq!(
                    rank_mod_prime(&slice, &basis, q as u32),
                    basis.len(),
                    "q = {q}, n = {n}, m = {m}"
                );
            }
        }
    }
}

#[test]
fn construction_is_deterministic() {
    assert_eq!(construct_sjb(4, 3).unwrap(), construct_sjb(4, 3).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // U x_u is the next chain vector, for a random chain and position
    #[test]
    fn random_chain_steps(pick in 0usize..10_000, qn in prop::sample::select(vec![(2u64, 4usize), (3, 3), (5, 2), (2, 5)])) {
        let (q, n) = qn;
        let b = construct_sjb(n, q).unwrap();
        let c = &b.chains[pick % b.chains.len()];
        let i = (pick / b.chains.len()) % c.vectors.len();
        let up = up_apply(&c.vectors[i]);
        match c.vectors.get(i + 1) {
            Some(next) => prop_assert_eq!(&up, next),
            None => prop_assert!(up.is_zero()),
        }
    }
}
