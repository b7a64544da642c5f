//! Exact dense linear algebra over any supported coefficient field.
//!
//! Everything here is plain Gaussian elimination and Krylov iteration on
//! immutable row-major matrices; no floating point, no sparsity, no
//! eigenvalues.  Dimensions stay small (≤ 16 in every consumer), so clarity
//! beats asymptotics throughout.
//!
//! Invariants:
//!   - a [`Mat`] is rectangular and all entries share one field;
//!   - [`Subspace`] bases are kept in reduced row echelon form, so equality
//!     of subspaces is equality of bases;
//!   - [`jordan_chevalley`] refuses imperfect coefficient fields: uniqueness
//!     of the decomposition genuinely fails there, so "the" decomposition
//!     does not exist.
//!
//! Vectors are plain `Vec<FieldElement>` in the ambient coordinates.

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::poly::{self, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ---- matrix type ----

/// Dense row-major matrix over one field.
#[derive(Clone)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Mat {
    // ---- constructors ----

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows in matrix".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field.descriptor().to_string(),
                        found: e.field().descriptor().to_string(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Mat { field: field.clone(), rows: r, cols: c, entries })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &n in *row {
                entries.push(field.int(n));
            }
        }
        Mat { field: field.clone(), rows: r, cols: c, entries }
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated coefficients in the last column.  companion(1) is the
    /// 0×0 matrix, the recursion base used by the module-structure code.
    pub fn companion(f: &Poly) -> Result<Mat> {
        if !f.is_monic() {
            return Err(Error::Shape(format!("companion matrix needs a monic input, got {f}")));
        }
        let n = f.degree().expect("monic implies nonzero");
        let field = f.field();
        let mut m = Mat::zeros(field, n, n);
        for i in 1..n {
            m.set(i, i - 1, field.one());
        }
        for i in 0..n {
            m.set(i, n - 1, -f.coeff(i));
        }
        Ok(m)
    }

    // ---- accessors ----

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    // ---- arithmetic ----

    pub fn scale(&self, c: &FieldElement) -> Mat {
        let entries = self.entries.iter().map(|e| e * c).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.at(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square(), "powers need a square matrix");
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Mat) -> bool {
        self * other == other * self
    }

    /// Flatten to a vector (row-major); the coordinates used when matrices
    /// are treated as elements of an algebra.
    pub fn flatten(&self) -> Vec<FieldElement> {
        self.entries.clone()
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {}x{} = {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Mat { field: field.clone(), rows, cols, entries })
    }
}

fn require_same_shape(a: &Mat, b: &Mat) {
    assert!(
        a.field == b.field && a.rows == b.rows && a.cols == b.cols,
        "matrix shape/field mismatch: {}x{} over {} vs {}x{} over {}",
        a.rows,
        a.cols,
        a.field.descriptor(),
        b.rows,
        b.cols,
        b.field.descriptor()
    );
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    require_same_shape(a, b);
    let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect();
    Mat { field: a.field.clone(), rows: a.rows, cols: a.cols, entries }
}

fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    require_same_shape(a, b);
    let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x - y).collect();
    Mat { field: a.field.clone(), rows: a.rows, cols: a.cols, entries }
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    assert!(
        a.field == b.field && a.cols == b.rows,
        "matrix product shape mismatch: {}x{} times {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
    let mut out = Mat::zeros(&a.field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let t = aik * b.at(k, j);
                if !t.is_zero() {
                    let cur = out.at(i, j) + &t;
                    out.set(i, j, cur);
                }
            }
        }
    }
    out
}

macro_rules! mat_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                $impl_fn(self, rhs)
            }
        }
        impl std::ops::$trait for Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                $impl_fn(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                $impl_fn(&self, rhs)
            }
        }
        impl std::ops::$trait<Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                $impl_fn(self, &rhs)
            }
        }
    };
}

mat_binop!(Add, add, mat_add);
mat_binop!(Sub, sub, mat_sub);
mat_binop!(Mul, mul, mat_mul);

impl std::ops::Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        let entries = self.entries.iter().map(|e| -e).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }
}

impl std::ops::Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        -&self
    }
}

impl std::fmt::Display for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{} over {} {}", self.rows, self.cols, self.field.descriptor(), self)
    }
}

/// Horner evaluation of a polynomial at a square matrix.
pub fn apply_poly(f: &Poly, m: &Mat) -> Mat {
    assert!(m.is_square(), "polynomial evaluation needs a square matrix");
    assert!(f.field() == m.field(), "coefficient field mismatch");
    let n = m.rows();
    let mut acc = Mat::zeros(m.field(), n, n);
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * m) + &Mat::identity(m.field(), n).scale(c);
    }
    acc
}

// ---- vectors ----

pub fn vec_is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub fn vec_add(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    a.iter().map(|x| x * c).collect()
}

pub fn std_basis_vector(field: &Field, dim: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

// ---- elimination ----

/// Reduce rows in place to reduced row echelon form; returns the pivot
/// column of each nonzero row, in order.
fn rref(rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        // Find a pivot in column c at or below row r.
        let Some(piv) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        rows[r] = vec_scale(&rows[r], &inv);
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let scaled = vec_scale(&rows[r], &f);
                rows[i] = vec_sub(&rows[i], &scaled);
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.retain(|row| !vec_is_zero(row));
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut rows: Vec<Vec<FieldElement>> = (0..m.rows()).map(|i| m.row(i)).collect();
    rref(&mut rows);
    rows.len()
}

/// One solution x of M·x = b.  A right-hand side of the wrong length is a
/// `Shape` error; a consistent-shape system without solutions is
/// `Inconsistent`.
pub fn solve(m: &Mat, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side length {} does not match {} rows",
            b.len(),
            m.rows()
        )));
    }
    // Eliminate on the augmented matrix.
    let mut rows: Vec<Vec<FieldElement>> = (0..m.rows())
        .map(|i| {
            let mut row = m.row(i);
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    let aug_col = m.cols();
    if pivots.contains(&aug_col) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![m.field().zero(); m.cols()];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[aug_col].clone();
    }
    Ok(x)
}

/// Basis of the right null space {x : M·x = 0}, one vector per free column,
/// in column order.
pub fn kernel(m: &Mat) -> Vec<Vec<FieldElement>> {
    let mut rows: Vec<Vec<FieldElement>> = (0..m.rows()).map(|i| m.row(i)).collect();
    let pivots = rref(&mut rows);
    let field = m.field();
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); m.cols()];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `Singular`.
pub fn inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::Shape("only square matrices can be inverted".into()));
    }
    let n = m.rows();
    let mut rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            let mut row = m.row(i);
            row.extend(Mat::identity(m.field(), n).row(i));
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return Err(Error::Singular);
    }
    let out_rows: Vec<Vec<FieldElement>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
    Mat::from_rows(m.field(), out_rows)
}

// ---- minimal polynomials ----

/// Monic generator of the annihilating ideal {g : g(M)·v = 0}; 1 for v = 0.
pub fn min_poly_on_vector(m: &Mat, v: &[FieldElement]) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Shape("minimal polynomials need a square matrix".into()));
    }
    if v.len() != m.cols() {
        return Err(Error::Shape(format!(
            "vector length {} does not match dimension {}",
            v.len(),
            m.cols()
        )));
    }
    let field = m.field();
    if vec_is_zero(v) {
        return Ok(Poly::one(field));
    }
    // Grow the Krylov sequence v, Mv, M²v, ... until a linear dependence
    // appears; its coefficients are the minimal polynomial on v.
    let mut krylov: Vec<Vec<FieldElement>> = vec![v.to_vec()];
    loop {
        let next = m.mul_vec(krylov.last().unwrap());
        let k = Mat::from_rows(field, transpose_vecs(&krylov, m.rows()))?;
        match solve(&k, &next) {
            Ok(c) => {
                // next = Σ c_i M^i v, so the order polynomial is X^j − Σ c_i X^i.
                let j = krylov.len();
                let mut coeffs: Vec<FieldElement> = c.into_iter().map(|x| -x).collect();
                coeffs.push(field.one());
                debug_assert_eq!(coeffs.len(), j + 1);
                return Poly::from_coeffs(field, coeffs);
            }
            Err(Error::Inconsistent) => {
                krylov.push(next);
                if krylov.len() > m.rows() + 1 {
                    return Err(Error::Internal(
                        "Krylov sequence exceeded the ambient dimension".into(),
                    ));
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Rows of the matrix whose columns are the given vectors.
fn transpose_vecs(vecs: &[Vec<FieldElement>], dim: usize) -> Vec<Vec<FieldElement>> {
    (0..dim)
        .map(|i| vecs.iter().map(|v| v[i].clone()).collect())
        .collect()
}

/// Monic minimal polynomial, as the lcm of the order polynomials of the
/// standard basis vectors; exits early once the degree reaches the
/// dimension.  The 0×0 matrix has minimal polynomial 1.
pub fn min_poly_matrix(m: &Mat) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Shape("minimal polynomials need a square matrix".into()));
    }
    let n = m.rows();
    let field = m.field();
    let mut acc = Poly::one(field);
    for i in 0..n {
        let e = std_basis_vector(field, n, i);
        let ord = min_poly_on_vector(m, &e)?;
        // lcm(acc, ord)
        let g = poly::poly_gcd(&acc, &ord);
        acc = (&acc * &ord).exact_div(&g)?;
        if acc.degree() == Some(n) {
            break;
        }
    }
    Ok(acc)
}

// ---- cyclic vectors ----

/// A vector whose Krylov space is everything, or None.  None happens exactly
/// when deg(min_poly) < dim.  The search is deterministic: standard basis
/// vectors, then pairwise sums, then an exhaustive sweep over tiny fields or
/// a fixed-seed randomized sweep over large ones.
pub fn cyclic_vector(m: &Mat) -> Result<Option<Vec<FieldElement>>> {
    if !m.is_square() {
        return Err(Error::Shape("cyclic vectors need a square matrix".into()));
    }
    let n = m.rows();
    let field = m.field();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mp = min_poly_matrix(m)?;
    if mp.degree() != Some(n) {
        return Ok(None);
    }
    let is_cyclic = |v: &[FieldElement]| -> Result<bool> {
        Ok(min_poly_on_vector(m, v)?.degree() == Some(n))
    };
    for i in 0..n {
        let v = std_basis_vector(field, n, i);
        if is_cyclic(&v)? {
            return Ok(Some(v));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = vec_add(&std_basis_vector(field, n, i), &std_basis_vector(field, n, j));
            if is_cyclic(&v)? {
                return Ok(Some(v));
            }
        }
    }
    // Tiny field: enumerate every vector (base-|F| digits of the index).
    if let Some(count) = field.element_count() {
        if (count as u128).pow(n as u32) <= 1 << 16 {
            let total = count.pow(n as u32);
            for idx in 0..total {
                let mut v = Vec::with_capacity(n);
                let mut rest = idx;
                for _ in 0..n {
                    v.push(field.element_at(rest % count));
                    rest /= count;
                }
                if is_cyclic(&v)? {
                    return Ok(Some(v));
                }
            }
            return Err(Error::Internal(
                "full minimal polynomial but no cyclic vector found by exhaustion".into(),
            ));
        }
    }
    // Large field: fixed-seed random combinations keep reports reproducible.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..500 {
        let v: Vec<FieldElement> = (0..n).map(|_| field.sample(&mut rng)).collect();
        if is_cyclic(&v)? {
            return Ok(Some(v));
        }
    }
    Err(Error::Internal(
        "full minimal polynomial but no cyclic vector found in 500 random trials".into(),
    ))
}

// ---- Jordan-Chevalley ----

/// A Jordan–Chevalley decomposition M = s + n with both parts polynomials
/// in M.
#[derive(Clone, Debug)]
pub struct JCDecomposition {
    /// Semisimple part: its minimal polynomial is squarefree.
    pub s: Mat,
    /// Nilpotent part: n = M − s, n^dim = 0.
    pub n: Mat,
    /// Witness polynomial with s = s_poly(M).
    pub s_poly: Poly,
}

/// Jordan–Chevalley decomposition over a perfect field, by Newton iteration
/// on the squarefree part g of the minimal polynomial:
/// s_{k+1} = s_k − g(s_k)·h(s_k) with h ≡ (g′)⁻¹ mod the minimal polynomial
/// of s_k.  Imperfect fields are refused: uniqueness fails there, so no
/// single answer is correct.
pub fn jordan_chevalley(m: &Mat) -> Result<JCDecomposition> {
    if !m.is_square() {
        return Err(Error::Shape("Jordan-Chevalley needs a square matrix".into()));
    }
    if !m.field().is_perfect() {
        return Err(Error::ImperfectField {
            op: "jordan_chevalley".into(),
            field: m.field().descriptor().to_string(),
        });
    }
    let field = m.field();
    let n_dim = m.rows();
    let mp = min_poly_matrix(m)?;
    let g = poly::squarefree_part(&mp)?;
    if g == mp || n_dim == 0 {
        // Already semisimple.
        return Ok(JCDecomposition {
            s: m.clone(),
            n: Mat::zeros(field, n_dim, n_dim),
            s_poly: Poly::x(field).rem(&mp).unwrap_or_else(|_| Poly::x(field)),
        });
    }
    // Maximum multiplicity ℓ: the least power of g divisible by the minimal
    // polynomial; the Newton iteration converges in ⌈log₂ ℓ⌉ steps.
    let mut l = 1u32;
    while !(mp.divides(&g.pow(l))) {
        l += 1;
        if l as usize > n_dim + 1 {
            return Err(Error::Internal("multiplicity exceeds the dimension".into()));
        }
    }
    let steps = 32 - (l - 1).leading_zeros(); // ⌈log₂ ℓ⌉
    let mut s = m.clone();
    let mut s_poly = Poly::x(field);
    let dg = g.derivative();
    for _ in 0..steps {
        let ms = min_poly_matrix(&s)?;
        let h = poly::inverse_mod(&dg.rem(&ms)?, &ms).map_err(|e| match e {
            Error::Singular => Error::Internal(
                "g' must be invertible modulo the minimal polynomial of s".into(),
            ),
            other => other,
        })?;
        let gs = apply_poly(&g, &s);
        if gs.is_zero() {
            break;
        }
        let hs = apply_poly(&h, &s);
        s = &s - &(&gs * &hs);
        // Track the same update on the polynomial side, mod the original
        // minimal polynomial.
        let g_comp = poly::compose_mod(&g, &s_poly, &mp)?;
        let h_comp = poly::compose_mod(&h, &s_poly, &mp)?;
        s_poly = (&s_poly - &(&g_comp * &h_comp)).rem(&mp)?;
    }
    if !apply_poly(&g, &s).is_zero() {
        return Err(Error::Internal("Newton iteration failed to converge".into()));
    }
    if apply_poly(&s_poly, m) != s {
        return Err(Error::Internal("semisimple-part witness polynomial mismatch".into()));
    }
    let nil = m - &s;
    if !nil.pow(n_dim as u32).is_zero() {
        return Err(Error::Internal("nilpotent part fails to vanish".into()));
    }
    Ok(JCDecomposition { s, n: nil, s_poly })
}

// ---- companion basis ----

/// Change of basis carrying a cyclic matrix to its companion form, plus a
/// polynomial expression for every other matrix through the same basis.
///
/// Returns (P, expressions) with P⁻¹·u·P = companion(min_poly(u)) and
/// g = h(u) for each (g, h) pair.  A matrix that solves against the Krylov
/// basis but fails re-evaluation is not a polynomial in u; that is reported
/// as `NotInGeneratedAlgebra` because it falsifies the single-generator
/// hypothesis the callers rely on.
pub fn to_companion_basis(u: &Mat, others: &[Mat]) -> Result<(Mat, Vec<Poly>)> {
    if !u.is_square() {
        return Err(Error::Shape("companion basis needs a square matrix".into()));
    }
    let n = u.rows();
    let field = u.field();
    let mp = min_poly_matrix(u)?;
    let v = cyclic_vector(u)?.ok_or(Error::NotCyclic {
        min_poly_deg: mp.degree().unwrap_or(0),
        dim: n,
    })?;
    // P's columns are the Krylov basis v, uv, ..., u^(n-1)v.
    let mut cols = Vec::with_capacity(n);
    let mut w = v.clone();
    for _ in 0..n {
        cols.push(w.clone());
        w = u.mul_vec(&w);
    }
    let p_rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let p = Mat::from_rows(field, p_rows)?;
    let p_inv = inverse(&p).map_err(|_| Error::Internal("Krylov basis must be invertible".into()))?;
    debug_assert_eq!(&(&p_inv * &(u * &p)), &Mat::companion(&mp)?);
    let mut expressions = Vec::with_capacity(others.len());
    for (index, g) in others.iter().enumerate() {
        if g.rows() != n || g.cols() != n || g.field() != field {
            return Err(Error::Shape(format!(
                "matrix {index} does not act on the same space"
            )));
        }
        let gv = g.mul_vec(&v);
        let coeffs = solve(&p, &gv).map_err(|e| match e {
            Error::Inconsistent => Error::NotInGeneratedAlgebra { index },
            other => other,
        })?;
        let h = Poly::from_coeffs(field, coeffs)?;
        if &apply_poly(&h, u) != g {
            return Err(Error::NotInGeneratedAlgebra { index });
        }
        expressions.push(h);
    }
    Ok((p, expressions))
}

// ---- subspaces ----

/// A subspace of F^dim, held as a reduced-row-echelon basis so that two
/// subspaces are equal iff their bases are equal componentwise.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ambient == other.ambient && self.basis == other.basis
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of F^{})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace::from_vectors(
            field,
            ambient,
            (0..ambient).map(|i| std_basis_vector(field, ambient, i)).collect(),
        )
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<Vec<FieldElement>>) -> Subspace {
        let mut rows: Vec<Vec<FieldElement>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .collect();
        let pivots = rref(&mut rows);
        Subspace { field: field.clone(), ambient, basis: rows, pivots }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical representative of v modulo this subspace: pivot
    /// coordinates are eliminated, leaving support only on free coordinates.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                let scaled = vec_scale(row, &f);
                w = vec_sub(&w, &scaled);
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(&self.field, self.ambient, vecs)
    }

    /// Intersection via the kernel of the stacked coefficient matrix: a
    /// vector is in both spans iff some coefficient combination balances.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(&self.field, self.ambient);
        }
        // Columns: our basis then the other basis; kernel rows give
        // combinations with Σ a_i u_i = Σ b_j w_j.
        let cols: Vec<Vec<FieldElement>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| vec_scale(w, &(-self.field.one()))))
            .collect();
        let rows: Vec<Vec<FieldElement>> = (0..self.ambient)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let m = Mat::from_rows(&self.field, rows).expect("rectangular by construction");
        let mut vecs = Vec::new();
        for combo in kernel(&m) {
            let mut v = vec![self.field.zero(); self.ambient];
            for (a, u) in combo.iter().take(self.dim()).zip(&self.basis) {
                if !a.is_zero() {
                    v = vec_add(&v, &vec_scale(u, a));
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(&self.field, self.ambient, vecs)
    }

    /// Coordinates of v in this basis, if v lies in the subspace.
    pub fn coords(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if !self.contains(v) {
            return None;
        }
        // With an RREF basis, the coordinate on each basis vector is just
        // the entry of v at that vector's pivot column.
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Standard coordinates not used as pivots; their basis vectors descend
    /// to a basis of the quotient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Is the subspace carried into itself by m?
    pub fn is_invariant_under(&self, m: &Mat) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// The matrix of m restricted to this subspace, in this basis.
    pub fn restriction_of(&self, m: &Mat) -> Result<Mat> {
        if !self.is_invariant_under(m) {
            return Err(Error::NotInvariant);
        }
        let d = self.dim();
        let mut out = Mat::zeros(&self.field, d, d);
        for (j, v) in self.basis.iter().enumerate() {
            let w = m.mul_vec(v);
            let c = self.coords(&w).expect("invariant");
            for i in 0..d {
                out.set(i, j, c[i].clone());
            }
        }
        Ok(out)
    }

    /// The matrix of m on the quotient space, in the basis of surviving
    /// standard vectors (see `complement_indices`).
    pub fn quotient_action_of(&self, m: &Mat) -> Result<Mat> {
        if !self.is_invariant_under(m) {
            return Err(Error::NotInvariant);
        }
        let free = self.complement_indices();
        let d = free.len();
        let mut out = Mat::zeros(&self.field, d, d);
        for (j, &fj) in free.iter().enumerate() {
            let e = std_basis_vector(&self.field, self.ambient, fj);
            let w = self.reduce(&m.mul_vec(&e));
            for (i, &fi) in free.iter().enumerate() {
                out.set(i, j, w[fi].clone());
            }
        }
        Ok(out)
    }

    /// Ambient representative of a quotient-coordinate vector.
    pub fn lift_from_quotient(&self, q: &[FieldElement]) -> Vec<FieldElement> {
        let free = self.complement_indices();
        assert_eq!(q.len(), free.len(), "quotient coordinate length mismatch");
        let mut v = vec![self.field.zero(); self.ambient];
        for (&fi, c) in free.iter().zip(q) {
            v[fi] = c.clone();
        }
        v
    }
}

// ---- tests ----
