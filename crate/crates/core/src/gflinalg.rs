//! Linear algebra over a prime field `F_q` and canonical subspaces.
//!
//! A [`Subspace`] is stored as its Schubert normal form: the unique `n × k`
//! column reduced echelon matrix whose column space it is. Equality, hashing
//! and ordering are therefore plain comparisons of the stored entries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{arg, Result};

fn inv_mod(a: u8, q: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(q));
    // q is small; Fermat via repeated multiplication would also do.
    let (mut t, mut new_t) = (0i32, 1i32);
    let (mut r, mut new_r) = (q as i32, (a % q) as i32);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    t.rem_euclid(q as i32) as u8
}

#[inline]
fn mul_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 * b as u16) % q as u16) as u8
}

#[inline]
fn sub_mod(a: u8, b: u8, q: u8) -> u8 {
    ((a as u16 + q as u16 - b as u16) % q as u16) as u8
}

/// An element of `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    value: u8,
    modulus: u8,
}

impl Fq {
    pub fn new(value: i64, modulus: u8) -> Self {
        Fq {
            value: value.rem_euclid(modulus as i64) as u8,
            modulus,
        }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u8 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fq> {
        (self.value != 0).then(|| Fq {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fq::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fq::new(self.value as i64 - rhs.value as i64, self.modulus)
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fq::new(self.value as i64 * rhs.value as i64, self.modulus)
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq::new(-(self.value as i64), self.modulus)
    }
}

/// Dense row-major matrix over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    q: u8,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl FqMatrix {
    pub fn new(q: u8, rows: usize, cols: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != rows * cols {
            return arg(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        if q < 2 {
            return arg("modulus must be at least 2");
        }
        let entries = entries.into_iter().map(|e| e % q).collect();
        Ok(FqMatrix {
            q,
            rows,
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(q: u8, rows: usize, columns: &[Vec<u8>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return arg(format!(
                "column of length {} in a {rows}-row matrix",
                c.len()
            ));
        }
        let cols = columns.len();
        let mut entries = vec![0u8; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                entries[i * cols + j] = x % q;
            }
        }
        FqMatrix::new(q, rows, cols, entries)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        Fq::new(self.entries[i * self.cols + j] as i64, self.q)
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols + j])
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.columns();
        row_reduce(&mut rows, self.rows, self.q).len()
    }
}

/// Reduced row echelon form in place; returns the pivot positions and
/// truncates `rows` to the nonzero ones. Pivots are found scanning
/// positions left to right, candidate rows top to bottom.
fn row_reduce(rows: &mut Vec<Vec<u8>>, width: usize, q: u8) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = inv_mod(rows[r][col], q);
        if s != 1 {
            for x in rows[r].iter_mut() {
                *x = mul_mod(*x, s, q);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let f = other[col];
            if f != 0 {
                for (x, &y) in other.iter_mut().zip(pivot_row.iter()) {
                    *x = sub_mod(*x, mul_mod(f, y, q), q);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F_q^n` in Schubert normal form.
///
/// Field order matters: the derived ordering compares pivot rows first and
/// then the column-major entries, which is the enumeration order of
/// [`crate::lattice::enumerate_rank`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u8,
    n: u8,
    k: u8,
    pivots: Vec<u8>,
    cols: Vec<u8>,
}

impl Subspace {
    pub fn zero(q: u8, n: usize) -> Self {
        Subspace {
            q,
            n: n as u8,
            k: 0,
            pivots: Vec::new(),
            cols: Vec::new(),
        }
    }

    /// The whole space `F_q^n`.
    pub fn full(q: u8, n: usize) -> Self {
        let mut cols = vec![0u8; n * n];
        for j in 0..n {
            cols[j * n + j] = 1;
        }
        Subspace {
            q,
            n: n as u8,
            k: n as u8,
            pivots: (0..n as u8).collect(),
            cols,
        }
    }

    /// Canonical span of arbitrary vectors of length `n`.
    pub fn span(q: u8, n: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return arg(format!("vector of length {} in F_{q}^{n}", v.len()));
        }
        let mut rows: Vec<Vec<u8>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| x % q).collect())
            .collect();
        Ok(Self::from_reduced(q, n, &mut rows))
    }

    fn from_reduced(q: u8, n: usize, rows: &mut Vec<Vec<u8>>) -> Self {
        let pivots = row_reduce(rows, n, q);
        Subspace {
            q,
            n: n as u8,
            k: pivots.len() as u8,
            pivots: pivots.into_iter().map(|p| p as u8).collect(),
            cols: rows.concat(),
        }
    }

    /// Builds directly from Schubert-normal-form columns, validating the form.
    pub fn from_snf_columns(q: u8, n: usize, columns: &[Vec<u8>]) -> Result<Self> {
        let s = Self::span(q, n, columns)?;
        if s.dim() != columns.len() || s.columns().ne(columns.iter().map(Vec::as_slice)) {
            return arg("columns are not in Schubert normal form");
        }
        Ok(s)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ambient(&self) -> usize {
        self.n as usize
    }

    pub fn dim(&self) -> usize {
        self.k as usize
    }

    /// Pivot rows `r_1 < ... < r_k`, zero-based.
    pub fn pivots(&self) -> &[u8] {
        &self.pivots
    }

    pub fn column(&self, j: usize) -> &[u8] {
        let n = self.ambient();
        &self.cols[j * n..(j + 1) * n]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.dim()).map(move |j| self.column(j))
    }

    pub fn matrix(&self) -> FqMatrix {
        let cols: Vec<Vec<u8>> = self.columns().map(<[u8]>::to_vec).collect();
        FqMatrix::from_columns(self.q, self.ambient(), &cols).expect("consistent shape")
    }

    pub fn is_full(&self) -> bool {
        self.k == self.n
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return arg(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.q, self.n, other.q, other.n
            ));
        }
        Ok(())
    }

    /// Residue of `v` after clearing pivot coordinates; zero iff `v ∈ self`.
    pub fn reduce_vector(&self, v: &[u8]) -> Vec<u8> {
        let q = self.q;
        let mut w: Vec<u8> = v.iter().map(|&x| x % q).collect();
        for (j, &r) in self.pivots.iter().enumerate() {
            let f = w[r as usize];
            if f != 0 {
                for (x, &c) in w.iter_mut().zip(self.column(j)) {
                    *x = sub_mod(*x, mul_mod(f, c, q), q);
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        v.len() == self.ambient() && self.reduce_vector(v).iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.dim() <= self.dim() && other.columns().all(|c| self.contains_vector(c)))
    }

    /// `self` covers `other`: `other ⊂ self` with dimension one less.
    pub fn covers(&self, other: &Subspace) -> Result<bool> {
        Ok(self.contains(other)? && self.dim() == other.dim() + 1)
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows: Vec<Vec<u8>> = self
            .columns()
            .chain(other.columns())
            .map(<[u8]>::to_vec)
            .collect();
        Ok(Self::from_reduced(self.q, self.ambient(), &mut rows))
    }

    /// Span of `self` and one extra vector.
    pub fn extend(&self, v: &[u8]) -> Subspace {
        let mut rows: Vec<Vec<u8>> = self.columns().map(<[u8]>::to_vec).collect();
        rows.push(v.to_vec());
        Self::from_reduced(self.q, self.ambient(), &mut rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient();
        // Zassenhaus: rows (x | x) and (y | 0); rows with zero left half
        // carry a basis of the intersection in their right half.
        let mut rows: Vec<Vec<u8>> = self
            .columns()
            .map(|c| [c, c].concat())
            .chain(other.columns().map(|c| [c, &vec![0u8; n][..]].concat()))
            .collect();
        row_reduce(&mut rows, 2 * n, self.q);
        let mut inter: Vec<Vec<u8>> = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Self::from_reduced(self.q, n, &mut inter))
    }

    /// `dim(self ∩ other)` via `dim X + dim Y - dim(X + Y)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        let j = self.join(other)?;
        Ok(self.dim() + other.dim() - j.dim())
    }

    /// The same subspace viewed inside `F_q^(n+1)` (zero last coordinate).
    pub fn embed(&self) -> Subspace {
        let n = self.ambient();
        let mut cols = Vec::with_capacity(self.dim() * (n + 1));
        for c in self.columns() {
            cols.extend_from_slice(c);
            cols.push(0);
        }
        Subspace {
            q: self.q,
            n: self.n + 1,
            k: self.k,
            pivots: self.pivots.clone(),
            cols,
        }
    }

    /// Inverse of [`Subspace::embed`]; `None` if some vector has a nonzero
    /// last coordinate.
    pub fn truncate(&self) -> Option<Subspace> {
        let n = self.ambient();
        if n == 0 || self.columns().any(|c| c[n - 1] != 0) {
            return None;
        }
        let mut cols = Vec::with_capacity(self.dim() * (n - 1));
        for c in self.columns() {
            cols.extend_from_slice(&c[..n - 1]);
        }
        Some(Subspace {
            q: self.q,
            n: self.n - 1,
            k: self.k,
            pivots: self.pivots.clone(),
            cols,
        })
    }

    /// True when the last coordinate is not identically zero on `self`,
    /// i.e. `self` lies off the hyperplane `F_q^(n-1)`.
    pub fn leaves_hyperplane(&self) -> bool {
        let n = self.ambient();
        n > 0 && self.columns().any(|c| c[n - 1] != 0)
    }
}

/// Schubert normal form of the column space of `m`.
pub fn schubert_normal_form(m: &FqMatrix) -> Subspace {
    let mut rows = m.columns();
    Subspace::from_reduced(m.q(), m.rows(), &mut rows)
}

/// `span(X, e_(n+1))` inside `F_q^(n+1)`.
pub fn hat(x: &Subspace) -> Subspace {
    let n = x.ambient();
    let mut s = x.embed();
    s.cols.extend(std::iter::repeat_n(0, n));
    s.cols.push(1);
    s.pivots.push(n as u8);
    s.k += 1;
    s
}

/// Image of `y ⊆ F_q^(n-1)` under `e_j ↦ column j of M(x)`, where
/// `x` is a hyperplane of `F_q^n`.
pub fn mu_apply(x: &Subspace, y: &Subspace) -> Result<Subspace> {
    let n = x.ambient();
    if n == 0 || x.dim() != n - 1 {
        return arg(format!(
            "μ needs a hyperplane, got dim {} in F^{n}",
            x.dim()
        ));
    }
    if y.ambient() != n - 1 || y.q() != x.q() {
        return arg(format!(
            "μ(X) acts on F_{}^{}, got a subspace of F_{}^{}",
            x.q(),
            n - 1,
            y.q(),
            y.ambient()
        ));
    }
    let q = x.q();
    let image: Vec<Vec<u8>> = y
        .columns()
        .map(|c| {
            let mut v = vec![0u8; n];
            for (j, &cj) in c.iter().enumerate() {
                if cj != 0 {
                    for (vi, &xi) in v.iter_mut().zip(x.column(j)) {
                        *vi = ((*vi as u16 + cj as u16 * xi as u16) % q as u16) as u8;
                    }
                }
            }
            v
        })
        .collect();
    Subspace::span(q, n, &image)
}

/// All vectors of `F_q^n` in lexicographic order (first coordinate slowest).
pub fn all_vectors(q: u8, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; n];
        for i in (0..n).rev() {
            v[i] = (idx % q as u64) as u8;
            idx /= q as u64;
        }
        v
    })
}

/// Dot product mod `q`.
pub fn dot(a: &[u8], b: &[u8], q: u8) -> u8 {
    (a.iter()
        .zip(b)
        .map(|(&x, &y)| x as u32 * y as u32)
        .sum::<u32>()
        % q as u32) as u8
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (j, c) in self.columns().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for x in c {
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ">⊆F{}^{}", self.q, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn is_snf(s: &Subspace) -> bool {
        let n = s.ambient();
        let mut last: Option<usize> = None;
        for (j, c) in s.columns().enumerate() {
            let Some(r) = c.iter().position(|&x| x != 0) else {
                return false;
            };
            if c[r] != 1 || last.is_some_and(|l| l >= r) || s.pivots()[j] as usize != r {
                return false;
            }
            last = Some(r);
            for (j2, c2) in s.columns().enumerate() {
                if j2 != j && c2[r] != 0 {
                    return false;
                }
            }
            debug_assert!(r < n);
        }
        true
    }

    /// Independent rank oracle: count distinct vectors in the span.
    fn span_size(q: u8, n: usize, vs: &[&[u8]]) -> usize {
        let mut set = BTreeSet::new();
        let k = vs.len();
        for coeffs in all_vectors(q, k) {
            let mut v = vec![0u8; n];
            for (c, w) in coeffs.iter().zip(vs) {
                for (x, &y) in v.iter_mut().zip(w.iter()) {
                    *x = ((*x as u16 + *c as u16 * y as u16) % q as u16) as u8;
                }
            }
            set.insert(v);
        }
        set.len()
    }

    #[test]
    fn field_scalar_ops() {
        let a = Fq::new(2, 5);
        let b = Fq::new(4, 5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 3);
        assert_eq!((a * b).value(), 3);
        assert_eq!((-a).value(), 3);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert!(Fq::new(0, 5).inv().is_none());
    }

    #[test]
    fn snf_examples() {
        let id = FqMatrix::from_columns(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let s = schubert_normal_form(&id);
        assert_eq!(s.matrix(), id);

        let m = FqMatrix::from_columns(2, 3, &[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        let s = schubert_normal_form(&m);
        let cols: Vec<&[u8]> = s.columns().collect();
        assert_eq!(cols, vec![&[1u8, 0, 1][..], &[0, 1, 1][..]]);

        let zero = FqMatrix::new(3, 4, 2, vec![0; 8]).unwrap();
        assert_eq!(schubert_normal_form(&zero), Subspace::zero(3, 4));
    }

    #[test]
    fn seven_lines_in_f2_cubed() {
        let lines: BTreeSet<Subspace> = all_vectors(2, 3)
            .filter(|v| v.iter().any(|&x| x != 0))
            .map(|v| Subspace::span(2, 3, &[v]).unwrap())
            .collect();
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn snf_idempotent_and_rank_preserving() {
        for q in [2u8, 3] {
            for n in 1..=3usize {
                for k in 1..=n.min(2) {
                    for vs in all_vectors(q, n * k) {
                        let cols: Vec<Vec<u8>> = vs.chunks(n).map(<[u8]>::to_vec).collect();
                        let s = Subspace::span(q, n, &cols).unwrap();
                        assert!(is_snf(&s), "{s}");
                        let refs: Vec<&[u8]> = cols.iter().map(Vec::as_slice).collect();
                        assert_eq!((q as usize).pow(s.dim() as u32), span_size(q, n, &refs));
                        for c in &cols {
                            assert!(s.contains_vector(c));
                        }
                        let again = schubert_normal_form(&s.matrix());
                        assert_eq!(again, s);
                        assert_eq!(FqMatrix::from_columns(q, n, &cols).unwrap().rank(), s.dim());
                    }
                }
            }
        }
    }

    #[test]
    fn intersections() {
        let planes: BTreeSet<Subspace> = all_vectors(2, 6)
            .map(|v| Subspace::span(2, 3, &[v[..3].to_vec(), v[3..].to_vec()]).unwrap())
            .filter(|s| s.dim() == 2)
            .collect();
        assert_eq!(planes.len(), 7);
        for x in &planes {
            assert_eq!(&x.intersect(x).unwrap(), x);
            for y in &planes {
                if x != y {
                    let i = x.intersect(y).unwrap();
                    assert_eq!(i.dim(), 1);
                    assert!(x.contains(&i).unwrap() && y.contains(&i).unwrap());
                    assert_eq!(x.intersection_dim(y).unwrap(), 1);
                }
            }
        }
        let line = Subspace::span(3, 2, &[vec![1, 2]]).unwrap();
        assert!(line.covers(&Subspace::zero(3, 2)).unwrap());
        assert!(!Subspace::full(3, 2).covers(&Subspace::zero(3, 2)).unwrap());
        assert!(line.intersect(&Subspace::zero(3, 3)).is_err());
    }

    #[test]
    fn hat_examples() {
        let h = hat(&Subspace::zero(2, 1));
        assert_eq!(h, Subspace::span(2, 2, &[vec![0, 1]]).unwrap());
        let e1 = Subspace::span(2, 2, &[vec![1, 0]]).unwrap();
        let h = hat(&e1);
        let cols: Vec<&[u8]> = h.columns().collect();
        assert_eq!(cols, vec![&[1u8, 0, 0][..], &[0, 0, 1][..]]);
        assert!(h.leaves_hyperplane());
        assert_eq!(h.dim(), 2);
    }

    #[test]
    fn mu_examples() {
        let x = Subspace::span(3, 2, &[vec![1, 1]]).unwrap();
        let y = Subspace::full(3, 1);
        assert_eq!(mu_apply(&x, &y).unwrap(), x);
        assert_eq!(
            mu_apply(&x, &Subspace::zero(3, 1)).unwrap(),
            Subspace::zero(3, 2)
        );
        let std = Subspace::full(2, 3).truncate().map(|_| ()).is_none();
        assert!(std);
        let e12 = Subspace::full(2, 2).embed();
        let y = Subspace::span(2, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(mu_apply(&e12, &y).unwrap(), y.embed());
        assert!(mu_apply(&Subspace::full(2, 3), &y).is_err());
    }

    #[test]
    fn embed_truncate() {
        let y = Subspace::span(3, 3, &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(y.embed().truncate().unwrap(), y);
        assert!(hat(&y).truncate().is_none());
    }
}
