//! The Grassmann scheme on `B_q(n)_m`: relation operators, eigenvalues read
//! off a Jordan basis, Laplacian spectra and rooted spanning tree counts,
//! plus the minimal Johnson-graph counterparts.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

use crate::cyclotomic::CycInt;
use crate::error::{arg, Error, Result};
use crate::gflinalg::{FqMatrix, Subspace};
use crate::lattice::{covers_of, enumerate_rank, inner, norm_sq, LatticeVector};
use crate::qcomb::{qint, QBinomialTable};
use crate::sjb::Sjb;

/// An `m`-subset of `{1..n}` as a bitmask (bit `i` is element `i+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetValue {
    pub n: usize,
    pub mask: u64,
}

impl SubsetValue {
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn intersection_len(&self, other: &SubsetValue) -> usize {
        (self.mask & other.mask).count_ones() as usize
    }
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if 2 * m > n {
        return arg(format!("need 0 <= m <= n/2, got n = {n}, m = {m}"));
    }
    Ok(())
}

/// `B_q(n)_m` with the relation index `i = m - dim(X ∩ Y)` of every pair.
pub struct GrassmannScheme {
    q: u8,
    n: usize,
    m: usize,
    vertices: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    relation: Vec<u8>,
}

impl GrassmannScheme {
    pub fn new(n: usize, m: usize, q: u64) -> Result<Self> {
        let q = crate::check_prime(q)?;
        if m > n {
            return arg(format!("m = {m} exceeds n = {n}"));
        }
        let vertices = enumerate_rank(n, m, q);
        let index = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        let size = vertices.len();
        let relation: Vec<u8> = (0..size * size)
            .into_par_iter()
            .map(|ij| {
                let (x, y) = (&vertices[ij / size], &vertices[ij % size]);
                let both: Vec<Vec<u8>> =
                    x.columns().chain(y.columns()).map(<[u8]>::to_vec).collect();
                let join = if both.is_empty() {
                    0
                } else {
                    FqMatrix::from_columns(q, n, &both)
                        .expect("shapes agree")
                        .rank()
                };
                // dim(X ∩ Y) = 2m - dim(X + Y)
                (join - m) as u8
            })
            .collect();
        Ok(GrassmannScheme {
            q,
            n,
            m,
            vertices,
            index,
            relation,
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `i` such that `dim(X ∩ Y) = m - i`.
    pub fn relation(&self, a: usize, b: usize) -> usize {
        self.relation[a * self.vertices.len() + b] as usize
    }

    /// Edges of the Grassmann graph, `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let size = self.vertices.len();
        (0..size)
            .flat_map(|a| (a + 1..size).map(move |b| (a, b)))
            .filter(|&(a, b)| self.relation(a, b) == 1)
            .collect()
    }

    fn indexed(&self, v: &LatticeVector) -> Result<Vec<(usize, CycInt)>> {
        if v.ambient() != self.n || v.prime() != self.q as u32 {
            return arg("vector does not live on this scheme");
        }
        v.terms()
            .map(|(x, c)| match self.index.get(x) {
                Some(&i) => Ok((i, c.clone())),
                None => arg(format!("{x} does not have rank {}", self.m)),
            })
            .collect()
    }

    /// `(A_0 v, ..., A_m v)` in one sweep, as dense coefficient vectors.
    fn apply_all(&self, v: &LatticeVector) -> Result<Vec<Vec<CycInt>>> {
        let terms = self.indexed(v)?;
        let p = self.q as u32;
        let rows: Vec<Vec<CycInt>> = (0..self.vertices.len())
            .into_par_iter()
            .map(|x| {
                let mut acc = vec![CycInt::zero(p); self.m + 1];
                for (y, c) in &terms {
                    acc[self.relation(x, *y)] += c;
                }
                acc
            })
            .collect();
        Ok((0..=self.m)
            .map(|i| rows.iter().map(|r| r[i].clone()).collect())
            .collect())
    }

    fn to_vector(&self, dense: Vec<CycInt>) -> LatticeVector {
        let mut out = LatticeVector::zero(self.q as u32, self.n);
        for (x, c) in self.vertices.iter().zip(dense) {
            if !c.is_zero() {
                out.set_coeff(x.clone(), c).expect("same field");
            }
        }
        out
    }

    /// `(A_i v)(X) = Σ_{dim(X ∩ Y) = m - i} v(Y)`.
    pub fn adjacency_apply(&self, i: usize, v: &LatticeVector) -> Result<LatticeVector> {
        if i > self.m {
            return arg(format!("relation {i} exceeds m = {}", self.m));
        }
        let mut all = self.apply_all(v)?;
        Ok(self.to_vector(all.swap_remove(i)))
    }

    /// The eigenvalues `(λ_0, ..., λ_m)` of `v`, or a description of the
    /// first coordinate where `A_i v = λ v` fails.
    pub fn eigenvalues_of(
        &self,
        v: &LatticeVector,
    ) -> Result<std::result::Result<Vec<BigInt>, String>> {
        let images = self.apply_all(v)?;
        let norm = norm_sq(v)?;
        if norm.is_zero() {
            return Ok(Err("zero vector".into()));
        }
        let mut out = Vec::with_capacity(images.len());
        for (i, dense) in images.into_iter().enumerate() {
            let image = self.to_vector(dense);
            let num = inner(&image, v)?;
            let Some(num) = num.as_integer() else {
                return Ok(Err(format!("⟨A_{i} v, v⟩ = {num} is not rational")));
            };
            if !(num % &norm).is_zero() {
                return Ok(Err(format!(
                    "⟨A_{i} v, v⟩ = {num} is not a multiple of ‖v‖² = {norm}"
                )));
            }
            let lambda = num / &norm;
            let expected = v.scale_int(&lambda);
            if image != expected {
                let x = self
                    .vertices
                    .iter()
                    .find(|x| image.coeff(x) != expected.coeff(x))
                    .expect("vectors differ somewhere");
                return Ok(Err(format!(
                    "A_{i} v ≠ {lambda}·v at {x}: {} vs {}",
                    image.coeff(x),
                    expected.coeff(x)
                )));
            }
            out.push(lambda);
        }
        Ok(Ok(out))
    }
}

/// `A_i v` for `v` homogeneous of rank `m` over `B_q(n)`.
pub fn adjacency_apply(n: usize, m: usize, i: usize, v: &LatticeVector) -> Result<LatticeVector> {
    if v.ambient() != n {
        return arg(format!(
            "vector lives in dimension {}, expected {n}",
            v.ambient()
        ));
    }
    if !v.is_zero() && v.rank() != Some(m) {
        return arg(format!("vector is not homogeneous of rank {m}"));
    }
    GrassmannScheme::new(n, m, v.prime() as u64)?.adjacency_apply(i, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenRow {
    pub start_rank: usize,
    /// `λ_i` for relation `i = 0..=m`.
    pub eigenvalues: Vec<BigInt>,
}

/// Eigenvalues of every relation operator on `B_q(n)_m`, read off the rank-`m`
/// vectors of `b` and checked coordinate by coordinate. One row per start
/// rank `k = 0..=m`.
pub fn eigentable(n: usize, m: usize, b: &Sjb) -> Result<Vec<EigenRow>> {
    check_m(n, m)?;
    if b.n != n {
        return arg(format!("basis is for n = {}, expected {n}", b.n));
    }
    let scheme = GrassmannScheme::new(n, m, b.q as u64)?;
    let slice = b.rank_slice(m);
    let found: Vec<(usize, std::result::Result<Vec<BigInt>, String>)> = slice
        .par_iter()
        .map(|&(k, v)| Ok((k, scheme.eigenvalues_of(v)?)))
        .collect::<Result<_>>()?;
    let mut rows: Vec<EigenRow> = Vec::new();
    for (idx, (k, res)) in found.into_iter().enumerate() {
        let lambdas = res.map_err(|e| {
            Error::Verification(format!("rank-{m} vector {idx} (start rank {k}): {e}"))
        })?;
        match rows.iter().find(|r| r.start_rank == k) {
            Some(r) if r.eigenvalues != lambdas => {
                return Err(Error::Verification(format!(
                    "start rank {k}: eigenvalues {:?} and {:?} disagree",
                    r.eigenvalues, lambdas
                )));
            }
            Some(_) => {}
            None => rows.push(EigenRow {
                start_rank: k,
                eigenvalues: lambdas,
            }),
        }
    }
    rows.sort_by_key(|r| r.start_rank);
    if rows.len() != m + 1 {
        return Err(Error::Verification(format!(
            "{} eigenvalue rows, expected {}",
            rows.len(),
            m + 1
        )));
    }
    for (a, r) in rows.iter().enumerate() {
        if !r.eigenvalues[0].is_one() {
            return Err(Error::Verification(format!(
                "start rank {}: λ_0 = {}",
                r.start_rank, r.eigenvalues[0]
            )));
        }
        if rows[..a].iter().any(|s| s.eigenvalues == r.eigenvalues) {
            return Err(Error::Verification(format!(
                "start rank {} repeats an earlier row",
                r.start_rank
            )));
        }
    }
    Ok(rows)
}

/// Laplacian eigenvalues `D - λ_1` of the Grassmann graph implied by an
/// eigentable, where `D` is the valency (`λ_1` on the constant row).
pub fn laplacian_from_eigentable(rows: &[EigenRow]) -> Vec<(usize, BigInt)> {
    let Some(valency) = rows
        .iter()
        .find(|r| r.start_rank == 0)
        .and_then(|r| r.eigenvalues.get(1))
    else {
        return rows
            .iter()
            .map(|r| (r.start_rank, BigInt::zero()))
            .collect();
    };
    rows.iter()
        .map(|r| (r.start_rank, valency - &r.eigenvalues[1]))
        .collect()
}

/// `[k]_q [n-k+1]_q` with multiplicity `[n,k] - [n,k-1]`, for `k = 0..=m`.
pub fn laplacian_spectrum(n: usize, m: usize, q: u64) -> Result<Vec<(BigUint, BigUint)>> {
    check_m(n, m)?;
    let table = QBinomialTable::new(n, q)?;
    Ok((0..=m)
        .map(|k| {
            let value = qint(k as u32, q) * qint((n - k + 1) as u32, q);
            let mult = table.get(n as i64, k as i64) - table.get(n as i64, k as i64 - 1);
            (value, mult)
        })
        .collect())
}

/// Rooted spanning trees of `C_q(n, m)` by the product formula.
pub fn rooted_tree_count(n: usize, m: usize, q: u64) -> Result<BigUint> {
    let spec = laplacian_spectrum(n, m, q)?;
    Ok(spec
        .into_iter()
        .skip(1)
        .map(|(value, mult)| value.pow(mult.to_u32().expect("multiplicity fits u32")))
        .product())
}

/// The combinatorial Laplacian as a dense integer matrix.
pub fn laplacian_matrix(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<BigInt>>> {
    let mut lap = vec![vec![0i64; vertex_count]; vertex_count];
    for &(a, b) in edges {
        if a >= vertex_count || b >= vertex_count {
            return arg(format!(
                "edge ({a}, {b}) leaves the vertex range 0..{vertex_count}"
            ));
        }
        if a == b {
            return arg(format!("loop at vertex {a}"));
        }
        if lap[a][b] != 0 {
            return arg(format!("repeated edge ({a}, {b})"));
        }
        lap[a][b] = -1;
        lap[b][a] = -1;
        lap[a][a] += 1;
        lap[b][b] += 1;
    }
    Ok(lap
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect())
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `|V| · det(reduced Laplacian)`: the number of rooted spanning trees.
pub fn matrix_tree_oracle(vertex_count: usize, edges: &[(usize, usize)]) -> Result<BigUint> {
    if vertex_count == 0 {
        return arg("graph has no vertices");
    }
    let lap = laplacian_matrix(vertex_count, edges)?;
    let reduced: Vec<Vec<BigInt>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    let det = determinant(&reduced);
    Ok((det * BigInt::from(vertex_count))
        .to_biguint()
        .expect("Laplacian minors are nonnegative"))
}

/// Coefficients of `det(xI - A)`, lowest degree first, by Faddeev–LeVerrier.
pub fn characteristic_polynomial(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_(k-1) + c_(n-k+1) I
        let mut next = mat_mul(matrix, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(matrix, &mk);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    a[i].iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, row)| x * &row[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// `Π (x - λ)^mult`, lowest degree first.
pub fn polynomial_from_roots(roots: &[(BigInt, usize)]) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for (root, mult) in roots {
        for _ in 0..*mult {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * root;
            }
            poly = next;
        }
    }
    poly
}

/// True when the characteristic polynomial of the explicit Laplacian of
/// `C_q(n, m)` equals the one implied by [`laplacian_spectrum`].
pub fn spectrum_matches_charpoly(n: usize, m: usize, q: u64) -> Result<bool> {
    let scheme = GrassmannScheme::new(n, m, q)?;
    let lap = laplacian_matrix(scheme.vertex_count(), &scheme.edges())?;
    let roots: Vec<(BigInt, usize)> = laplacian_spectrum(n, m, q)?
        .into_iter()
        .map(|(v, k)| (BigInt::from(v), k.to_usize().expect("small multiplicity")))
        .collect();
    Ok(characteristic_polynomial(&lap) == polynomial_from_roots(&roots))
}

/// Rooted spanning trees of `C_q(n, m)` via the matrix-tree theorem.
pub fn grassmann_tree_oracle(n: usize, m: usize, q: u64) -> Result<BigUint> {
    let scheme = GrassmannScheme::new(n, m, q)?;
    matrix_tree_oracle(scheme.vertex_count(), &scheme.edges())
}

/// `|UD(X)| = |DU(X')| = [k]_q [n-k+1]_q` for `X` of rank `k`, `X'` of rank `k-1`.
pub fn ud_du_count(n: usize, k: usize, q: u64) -> Result<BigUint> {
    if !(1..=n).contains(&k) {
        return arg(format!("need 1 <= k <= n, got n = {n}, k = {k}"));
    }
    crate::check_prime(q)?;
    Ok(qint(k as u32, q) * qint((n - k + 1) as u32, q))
}

/// `|{(Y, Z) : X ⊇ Y ⊆ Z}|` with `Y` of rank `dim X - 1` and `Z` of rank `dim X`, by enumeration.
pub fn ud_enumerated(x: &Subspace) -> Result<usize> {
    if x.dim() == 0 {
        return arg("UD needs a subspace of positive rank");
    }
    let below = enumerate_rank(x.ambient(), x.dim() - 1, x.q());
    let mut count = 0;
    for y in below {
        if x.contains(&y)? {
            count += covers_of(&y).len();
        }
    }
    Ok(count)
}

/// `|{(Y, Z) : X ⊆ Y ⊇ Z}|` with `Y` of rank `dim X + 1` and `Z` of rank `dim X`, by enumeration.
pub fn du_enumerated(x: &Subspace) -> Result<usize> {
    if x.dim() >= x.ambient() {
        return arg("DU needs a proper subspace");
    }
    let mut count = 0;
    for y in covers_of(x) {
        for z in enumerate_rank(x.ambient(), x.dim(), x.q()) {
            if y.contains(&z)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Both sides of the Grassmann tree identity:
/// `|T_q(n,m)| · Π_{X ∈ B_(m-1)} |DU(X)|` and `|T_q(n,m-1)| · Π_{X ∈ B_m} |UD(X)|`,
/// with tree counts from the matrix-tree theorem and `UD`/`DU` enumerated.
pub fn theorem_gg_sides(n: usize, m: usize, q: u64) -> Result<(BigUint, BigUint)> {
    if m == 0 {
        return arg("need m >= 1");
    }
    check_m(n, m)?;
    let qq = crate::check_prime(q)?;
    let du: BigUint = enumerate_rank(n, m - 1, qq)
        .iter()
        .map(|x| du_enumerated(x).map(BigUint::from))
        .product::<Result<BigUint>>()?;
    let ud: BigUint = enumerate_rank(n, m, qq)
        .iter()
        .map(|x| ud_enumerated(x).map(BigUint::from))
        .product::<Result<BigUint>>()?;
    let left = grassmann_tree_oracle(n, m, q)? * du;
    let right = grassmann_tree_oracle(n, m - 1, q)? * ud;
    Ok((left, right))
}

pub fn check_theorem_gg(n: usize, m: usize, q: u64) -> Result<bool> {
    let (l, r) = theorem_gg_sides(n, m, q)?;
    Ok(l == r)
}

/// All `m`-subsets of `{1..n}` in increasing mask order.
pub fn subsets(n: usize, m: usize) -> Result<Vec<SubsetValue>> {
    if n > 63 {
        return arg("n must be at most 63");
    }
    Ok((0u64..1 << n)
        .filter(|x| x.count_ones() as usize == m)
        .map(|mask| SubsetValue { n, mask })
        .collect())
}

/// Edges of the Johnson graph `C(n, m)`, `a < b`.
pub fn johnson_edges(vertices: &[SubsetValue]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (a, x) in vertices.iter().enumerate() {
        for (b, y) in vertices.iter().enumerate().skip(a + 1) {
            if x.intersection_len(y) + 1 == x.len() {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Rooted spanning trees of `C(n, m)` via the matrix-tree theorem.
pub fn johnson_tree_oracle(n: usize, m: usize) -> Result<BigUint> {
    let v = subsets(n, m)?;
    matrix_tree_oracle(v.len(), &johnson_edges(&v))
}

fn binomial(n: usize, k: i64) -> BigUint {
    if k < 0 || k as usize > n {
        return BigUint::zero();
    }
    let k = k as usize;
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// `k(n-k+1)` with multiplicity `C(n,k) - C(n,k-1)`, for `k = 0..=m`.
pub fn johnson_laplacian_spectrum(n: usize, m: usize) -> Result<Vec<(BigUint, BigUint)>> {
    check_m(n, m)?;
    Ok((0..=m)
        .map(|k| {
            (
                BigUint::from(k * (n - k + 1)),
                binomial(n, k as i64) - binomial(n, k as i64 - 1),
            )
        })
        .collect())
}

/// Rooted spanning trees of `C(n, m)` by the product formula.
pub fn johnson_rooted_tree_count(n: usize, m: usize) -> Result<BigUint> {
    Ok(johnson_laplacian_spectrum(n, m)?
        .into_iter()
        .skip(1)
        .map(|(v, k)| v.pow(k.to_u32().expect("multiplicity fits u32")))
        .product())
}

fn subset_ud(x: &SubsetValue) -> usize {
    // drop one element, then add any element outside the remainder
    x.len() * (x.n - x.len() + 1)
}

fn subset_du(x: &SubsetValue) -> usize {
    (x.n - x.len()) * (x.len() + 1)
}

/// Johnson analogue of [`theorem_gg_sides`].
pub fn theorem_jg_sides(n: usize, m: usize) -> Result<(BigUint, BigUint)> {
    if m == 0 {
        return arg("need m >= 1");
    }
    check_m(n, m)?;
    let du: BigUint = subsets(n, m - 1)?
        .iter()
        .map(|x| BigUint::from(subset_du(x)))
        .product();
    let ud: BigUint = subsets(n, m)?
        .iter()
        .map(|x| BigUint::from(subset_ud(x)))
        .product();
    Ok((
        johnson_tree_oracle(n, m)? * du,
        johnson_tree_oracle(n, m - 1)? * ud,
    ))
}

pub fn check_theorem_jg(n: usize, m: usize) -> Result<bool> {
    let (l, r) = theorem_jg_sides(n, m)?;
    Ok(l == r)
}

/// Brute-force `UD` count for a subset, independent of [`theorem_jg_sides`].
pub fn subset_ud_enumerated(x: &SubsetValue) -> usize {
    let mut count = 0;
    for i in 0..x.n {
        if x.mask >> i & 1 == 1 {
            let y = x.mask & !(1 << i);
            count += (0..x.n).filter(|j| y >> j & 1 == 0).count();
        }
    }
    count
}

/// Checks that the relation operators are symmetric and partition the
/// all-ones matrix, by exhaustive pair enumeration.
pub fn relations_partition(scheme: &GrassmannScheme) -> bool {
    let size = scheme.vertex_count();
    (0..size).all(|a| {
        (0..size).all(|b| {
            let r = scheme.relation(a, b);
            r <= scheme.m() && r == scheme.relation(b, a) && ((r == 0) == (a == b))
        })
    })
}
