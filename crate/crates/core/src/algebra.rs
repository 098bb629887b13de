//! Structure-constant presentations and their axiom verifiers.
//!
//! All tables are indexed by basis position (0-based). A 2-map is stored on
//! basis vectors only; its value on `x = Σ_{i∈S} e_i` is forced by the
//! characteristic-2 sum rule to be `Σ_{i∈S} s_i + Σ_{i<j∈S} [e_i, e_j]`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2::{GF2Matrix, GF2Vector, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("missing table: {0}")]
    MissingTable(&'static str),
    #[error("candidate for basis element {0} is not an inner square: (ad e)^2 != ad f")]
    NotInnerSquare(usize),
    #[error("supplied elements do not form a free A-basis")]
    NotFreeBasis,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("presentation fails its axioms: {0}")]
    Invalid(Violation),
}

/// The first identity found to fail, with basis witnesses and both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<usize>,
    pub lhs: GF2Vector,
    pub rhs: GF2Vector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|i| (i + 1).to_string()).collect();
        write!(
            f,
            "{} at ({}): lhs {} != rhs {}",
            self.identity,
            w.join(","),
            self.lhs,
            self.rhs
        )
    }
}

/// Outcome of an axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub violation: Option<Violation>,
}

impl VerificationReport {
    pub fn pass() -> Self {
        Self { violation: None }
    }

    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }

    fn from_result(r: Result<(), Violation>) -> Self {
        Self { violation: r.err() }
    }

    pub fn into_result(self) -> Result<(), Violation> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(v),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "PASS"),
            Some(v) => write!(f, "FAIL: {v}"),
        }
    }
}

type Check = Result<(), Violation>;

fn expect_eq(identity: &str, witness: &[usize], lhs: GF2Vector, rhs: GF2Vector) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Violation {
            identity: identity.to_string(),
            witness: witness.to_vec(),
            lhs,
            rhs,
        })
    }
}

fn flatten(m: &GF2Matrix) -> GF2Vector {
    let mut v = GF2Vector::zeros(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in m.row(r).iter_ones() {
            v.set(r * m.cols() + c, true);
        }
    }
    v
}

fn expect_mat_eq(identity: &str, witness: &[usize], lhs: &GF2Matrix, rhs: &GF2Matrix) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        expect_eq(identity, witness, flatten(lhs), flatten(rhs))
    }
}

/// Structure constants of a (restricted Lie / Poisson / associative) algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `bracket[i][j] = [e_i, e_j]`.
    pub bracket: Vec<Vec<GF2Vector>>,
    /// `product[i][j] = e_i e_j`.
    pub product: Option<Vec<Vec<GF2Vector>>>,
    /// `two_map[i] = e_i^[2]`.
    pub two_map: Option<Vec<GF2Vector>>,
    pub unit: Option<GF2Vector>,
}

impl AlgebraPresentation {
    /// Abelian bracket, no product, no 2-map; basis named `e1..ed`.
    pub fn new(dim: usize) -> Self {
        Self::with_names((1..=dim).map(|i| format!("e{i}")).collect())
    }

    pub fn with_names(basis_names: Vec<String>) -> Self {
        let dim = basis_names.len();
        Self {
            dim,
            basis_names,
            bracket: vec![vec![GF2Vector::zeros(dim); dim]; dim],
            product: None,
            two_map: None,
            unit: None,
        }
    }

    pub fn zero(&self) -> GF2Vector {
        GF2Vector::zeros(self.dim)
    }

    pub fn basis(&self, i: usize) -> GF2Vector {
        GF2Vector::unit(self.dim, i)
    }

    pub fn elem(&self, indices: &[usize]) -> GF2Vector {
        GF2Vector::from_indices(self.dim, indices.iter().copied())
    }

    /// Sets `[e_i, e_j]` and `[e_j, e_i]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: GF2Vector) {
        self.bracket[j][i] = v.clone();
        self.bracket[i][j] = v;
    }

    /// Sets `e_i e_j` and `e_j e_i`, creating a zero product table if needed.
    pub fn set_product(&mut self, i: usize, j: usize, v: GF2Vector) {
        let d = self.dim;
        let table = self
            .product
            .get_or_insert_with(|| vec![vec![GF2Vector::zeros(d); d]; d]);
        table[j][i] = v.clone();
        table[i][j] = v;
    }

    pub fn set_two_map(&mut self, i: usize, v: GF2Vector) {
        let d = self.dim;
        self.two_map.get_or_insert_with(|| vec![GF2Vector::zeros(d); d])[i] = v;
    }

    pub fn ensure_product(&mut self) {
        let d = self.dim;
        self.product
            .get_or_insert_with(|| vec![vec![GF2Vector::zeros(d); d]; d]);
    }

    pub fn ensure_two_map(&mut self) {
        let d = self.dim;
        self.two_map.get_or_insert_with(|| vec![GF2Vector::zeros(d); d]);
    }

    pub fn bracket(&self, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
        bilinear(&self.bracket, self.dim, x, y)
    }

    pub fn product(&self, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
        bilinear(self.product_table(), self.dim, x, y)
    }

    /// Product square `x·x`.
    pub fn square(&self, x: &GF2Vector) -> GF2Vector {
        self.product(x, x)
    }

    /// The 2-map, extended to all elements by the sum rule.
    pub fn two_map(&self, x: &GF2Vector) -> GF2Vector {
        let s = self.two_map_table();
        let mut out = self.zero();
        let support: Vec<usize> = x.iter_ones().collect();
        for (k, &i) in support.iter().enumerate() {
            out.xor_assign(&s[i]);
            for &j in &support[k + 1..] {
                out.xor_assign(&self.bracket[i][j]);
            }
        }
        out
    }

    fn product_table(&self) -> &Vec<Vec<GF2Vector>> {
        self.product.as_ref().expect("product table required")
    }

    fn two_map_table(&self) -> &Vec<GF2Vector> {
        self.two_map.as_ref().expect("2-map table required")
    }

    pub fn has_product(&self) -> bool {
        self.product.is_some()
    }

    pub fn has_two_map(&self) -> bool {
        self.two_map.is_some()
    }

    /// Matrix of `ad_x = [x, -]`.
    pub fn ad_matrix(&self, x: &GF2Vector) -> GF2Matrix {
        let cols: Vec<GF2Vector> = (0..self.dim)
            .map(|j| self.bracket(x, &self.basis(j)))
            .collect();
        GF2Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of multiplication by `x`.
    pub fn mult_matrix(&self, x: &GF2Vector) -> GF2Matrix {
        let cols: Vec<GF2Vector> = (0..self.dim)
            .map(|j| self.product(x, &self.basis(j)))
            .collect();
        GF2Matrix::from_columns(self.dim, &cols)
    }

    /// Element formatted as `e1+e3`, or `0`.
    pub fn format_elem(&self, x: &GF2Vector) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.iter_ones()
            .map(|i| self.basis_names[i].clone())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Elements `e_i` with `[e_i, e_j] = 0` for all `j`, as a subspace basis.
    pub fn center(&self) -> Subspace {
        let rows: Vec<GF2Vector> = (0..self.dim)
            .map(|i| flatten(&self.ad_matrix(&self.basis(i))))
            .collect();
        // x central iff Σ x_i ad(e_i) = 0, i.e. x in the kernel of the transpose map.
        let m = GF2Matrix::from_columns(self.dim * self.dim, &rows);
        m.kernel_basis()
    }

    fn check_dims(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        let bad = |got: usize| AlgebraError::DimensionMismatch { expected: d, got };
        if self.basis_names.len() != d || self.bracket.len() != d {
            return Err(bad(self.bracket.len()));
        }
        for row in &self.bracket {
            if row.len() != d || row.iter().any(|v| v.len() != d) {
                return Err(bad(row.len()));
            }
        }
        if let Some(p) = &self.product {
            if p.len() != d || p.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
                return Err(bad(p.len()));
            }
        }
        if let Some(s) = &self.two_map {
            if s.len() != d || s.iter().any(|v| v.len() != d) {
                return Err(bad(s.len()));
            }
        }
        if let Some(u) = &self.unit {
            if u.len() != d {
                return Err(bad(u.len()));
            }
        }
        Ok(())
    }
}

fn bilinear(table: &[Vec<GF2Vector>], dim: usize, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
    let mut out = GF2Vector::zeros(dim);
    for i in x.iter_ones() {
        for j in y.iter_ones() {
            out.xor_assign(&table[i][j]);
        }
    }
    out
}

/// Alternation, antisymmetry and Jacobi for the bracket table.
fn check_lie(p: &AlgebraPresentation) -> Check {
    let d = p.dim;
    for i in 0..d {
        expect_eq("[x,x] = 0", &[i], p.bracket[i][i].clone(), p.zero())?;
        for j in i + 1..d {
            expect_eq(
                "[x,y] = [y,x]",
                &[i, j],
                p.bracket[i][j].clone(),
                p.bracket[j][i].clone(),
            )?;
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let (x, y, z) = (p.basis(i), p.basis(j), p.basis(k));
                let mut lhs = p.bracket(&x, &p.bracket(&y, &z));
                lhs += &p.bracket(&y, &p.bracket(&z, &x));
                lhs += &p.bracket(&z, &p.bracket(&x, &y));
                expect_eq("Jacobi identity", &[i, j, k], lhs, p.zero())?;
            }
        }
    }
    Ok(())
}

fn sample_pairs(dim: usize) -> Vec<(GF2Vector, GF2Vector)> {
    if dim <= 6 {
        let n = 1u64 << dim;
        let mut out = Vec::with_capacity((n * n) as usize);
        for a in 0..n {
            for b in 0..n {
                out.push((GF2Vector::from_mask(dim, a), GF2Vector::from_mask(dim, b)));
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x2_2222);
        let mut random = || {
            GF2Vector::from_indices(dim, (0..dim).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
        };
        (0..1000).map(|_| (random(), random())).collect()
    }
}

fn check_two_map(p: &AlgebraPresentation) -> Check {
    let d = p.dim;
    let s = p.two_map_table();
    for i in 0..d {
        for j in 0..d {
            let lhs = p.bracket(&s[i], &p.basis(j));
            let rhs = p.bracket(&p.basis(i), &p.bracket[i][j]);
            expect_eq("[x^[2],y] = [x,[x,y]]", &[i, j], lhs, rhs)?;
        }
    }
    // Well-definedness of the forced extension to sums.
    for (x, y) in sample_pairs(d) {
        let lhs = p.two_map(&(&x + &y));
        let mut rhs = p.two_map(&x);
        rhs += &p.two_map(&y);
        rhs += &p.bracket(&x, &y);
        if lhs != rhs {
            return expect_eq("(x+y)^[2] = x^[2] + y^[2] + [x,y]", &[], lhs, rhs);
        }
        let lhs = p.bracket(&p.two_map(&x), &y);
        let rhs = p.bracket(&x, &p.bracket(&x, &y));
        if lhs != rhs {
            return expect_eq("[x^[2],y] = [x,[x,y]]", &[], lhs, rhs);
        }
    }
    Ok(())
}

/// Commutativity, associativity and unit laws of the product.
fn check_commutative_associative(p: &AlgebraPresentation) -> Check {
    let d = p.dim;
    let m = p.product_table();
    for i in 0..d {
        for j in i + 1..d {
            expect_eq("xy = yx", &[i, j], m[i][j].clone(), m[j][i].clone())?;
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = p.product(&m[i][j], &p.basis(k));
                let rhs = p.product(&p.basis(i), &m[j][k]);
                expect_eq("(xy)z = x(yz)", &[i, j, k], lhs, rhs)?;
            }
        }
    }
    if let Some(u) = &p.unit {
        for i in 0..d {
            expect_eq("1x = x", &[i], p.product(u, &p.basis(i)), p.basis(i))?;
        }
    }
    Ok(())
}

pub fn verify_restricted_lie(p: &AlgebraPresentation) -> Result<VerificationReport, AlgebraError> {
    p.check_dims()?;
    if !p.has_two_map() {
        return Err(AlgebraError::MissingTable("two_map"));
    }
    Ok(VerificationReport::from_result(
        check_lie(p).and_then(|_| check_two_map(p)),
    ))
}

/// Bracket-only check (alternation, antisymmetry, Jacobi).
pub fn verify_lie(p: &AlgebraPresentation) -> Result<VerificationReport, AlgebraError> {
    p.check_dims()?;
    Ok(VerificationReport::from_result(check_lie(p)))
}

/// Commutative associative (and unital, when a unit is given) product.
pub fn verify_commutative_associative(
    p: &AlgebraPresentation,
) -> Result<VerificationReport, AlgebraError> {
    p.check_dims()?;
    if !p.has_product() {
        return Err(AlgebraError::MissingTable("product"));
    }
    Ok(VerificationReport::from_result(check_commutative_associative(p)))
}

pub const RES_PA_IDENTITY: &str = "(xy)^[2] = x^2 y^[2] + y^2 x^[2] + xy{x,y}";

pub fn verify_restricted_poisson(
    p: &AlgebraPresentation,
) -> Result<VerificationReport, AlgebraError> {
    p.check_dims()?;
    if !p.has_two_map() {
        return Err(AlgebraError::MissingTable("two_map"));
    }
    if !p.has_product() {
        return Err(AlgebraError::MissingTable("product"));
    }
    let check = || -> Check {
        check_lie(p)?;
        check_two_map(p)?;
        check_commutative_associative(p)?;
        let d = p.dim;
        let m = p.product_table();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let lhs = p.bracket(&p.basis(a), &m[b][c]);
                    let mut rhs = p.product(&p.bracket[a][b], &p.basis(c));
                    rhs += &p.product(&p.basis(b), &p.bracket[a][c]);
                    expect_eq("{x,yz} = {x,y}z + y{x,z}", &[a, b, c], lhs, rhs)?;
                }
            }
        }
        for a in 0..d {
            for b in a..d {
                let (x, y) = (p.basis(a), p.basis(b));
                let xy = &m[a][b];
                let lhs = p.two_map(xy);
                let mut rhs = p.product(&p.square(&x), &p.two_map(&y));
                rhs += &p.product(&p.square(&y), &p.two_map(&x));
                rhs += &p.product(xy, &p.bracket[a][b]);
                expect_eq(RES_PA_IDENTITY, &[a, b], lhs, rhs)?;
            }
        }
        Ok(())
    };
    Ok(VerificationReport::from_result(check()))
}

/// Replaces the 2-map table by `candidates` after checking Jacobson's
/// condition `(ad e_i)^2 = ad f_i` on every basis vector.
pub fn two_map_from_basis(
    p: &AlgebraPresentation,
    candidates: &[GF2Vector],
) -> Result<AlgebraPresentation, AlgebraError> {
    p.check_dims()?;
    if candidates.len() != p.dim {
        return Err(AlgebraError::DimensionMismatch {
            expected: p.dim,
            got: candidates.len(),
        });
    }
    for (i, f) in candidates.iter().enumerate() {
        let ad = p.ad_matrix(&p.basis(i));
        if ad.mul(&ad) != p.ad_matrix(f) {
            return Err(AlgebraError::NotInnerSquare(i));
        }
    }
    let mut out = p.clone();
    out.two_map = Some(candidates.to_vec());
    Ok(out)
}

/// Solves `ad f_i = (ad e_i)^2` for every basis vector. Returns the first
/// index for which no `f_i` exists when the bracket admits no 2-map.
pub fn inner_square_candidates(p: &AlgebraPresentation) -> Result<Vec<GF2Vector>, usize> {
    let d = p.dim;
    let ads: Vec<GF2Vector> = (0..d).map(|k| flatten(&p.ad_matrix(&p.basis(k)))).collect();
    let m = GF2Matrix::from_columns(d * d, &ads);
    (0..d)
        .map(|i| {
            let ad = p.ad_matrix(&p.basis(i));
            m.solve(&flatten(&ad.mul(&ad))).ok_or(i)
        })
        .collect()
}

/// Lie–Rinehart data `(A, L, θ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRinehartPresentation {
    /// Commutative algebra `A` (product and unit are used).
    pub base: AlgebraPresentation,
    /// The Lie algebra `L` (bracket and 2-map are used).
    pub lie: AlgebraPresentation,
    /// `action[a][j] = e^A_a · e^L_j`.
    pub action: Vec<Vec<GF2Vector>>,
    /// `anchor[j]` is the matrix of `θ(e^L_j)` acting on `A`.
    pub anchor: Vec<GF2Matrix>,
}

impl LieRinehartPresentation {
    /// `a · x` for `a ∈ A`, `x ∈ L`.
    pub fn act(&self, a: &GF2Vector, x: &GF2Vector) -> GF2Vector {
        bilinear(&self.action, self.lie.dim, a, x)
    }

    /// Matrix of `θ(x)`.
    pub fn anchor_of(&self, x: &GF2Vector) -> GF2Matrix {
        let n = self.base.dim;
        let mut out = GF2Matrix::zeros(n, n);
        for j in x.iter_ones() {
            out = out.add(&self.anchor[j]);
        }
        out
    }

    /// `θ(x)(a)`.
    pub fn theta(&self, x: &GF2Vector, a: &GF2Vector) -> GF2Vector {
        self.anchor_of(x).mul_vec(a)
    }

    /// Matrix of `x ↦ a·x` on `L`.
    pub fn action_matrix(&self, a: &GF2Vector) -> GF2Matrix {
        let cols: Vec<GF2Vector> = (0..self.lie.dim)
            .map(|j| self.act(a, &self.lie.basis(j)))
            .collect();
        GF2Matrix::from_columns(self.lie.dim, &cols)
    }

    fn check_dims(&self) -> Result<(), AlgebraError> {
        self.base.check_dims()?;
        self.lie.check_dims()?;
        let (na, nl) = (self.base.dim, self.lie.dim);
        let bad = |got| AlgebraError::DimensionMismatch { expected: na, got };
        if self.action.len() != na
            || self
                .action
                .iter()
                .any(|r| r.len() != nl || r.iter().any(|v| v.len() != nl))
        {
            return Err(bad(self.action.len()));
        }
        if self.anchor.len() != nl
            || self.anchor.iter().any(|m| m.rows() != na || m.cols() != na)
        {
            return Err(AlgebraError::DimensionMismatch {
                expected: nl,
                got: self.anchor.len(),
            });
        }
        Ok(())
    }

    /// Whether `elements` is a free A-basis of `L`: the map
    /// `(a_1..a_r) ↦ Σ a_k u_k` from `A^r` is a GF(2)-bijection.
    pub fn is_free_basis(&self, elements: &[GF2Vector]) -> bool {
        let (na, nl) = (self.base.dim, self.lie.dim);
        if elements.len() * na != nl {
            return false;
        }
        let cols: Vec<GF2Vector> = elements
            .iter()
            .flat_map(|u| (0..na).map(move |a| self.act(&GF2Vector::unit(na, a), u)))
            .collect();
        GF2Matrix::from_columns(nl, &cols).rank() == nl
    }

    /// Coefficients `a_k` with `x = Σ a_k u_k` over a free basis.
    pub fn decompose(&self, elements: &[GF2Vector], x: &GF2Vector) -> Option<Vec<GF2Vector>> {
        let (na, nl) = (self.base.dim, self.lie.dim);
        let cols: Vec<GF2Vector> = elements
            .iter()
            .flat_map(|u| (0..na).map(move |a| self.act(&GF2Vector::unit(na, a), u)))
            .collect();
        let sol = GF2Matrix::from_columns(nl, &cols).solve(x)?;
        Some((0..elements.len()).map(|k| sol.slice(k * na, na)).collect())
    }
}

fn check_a_module(base: &AlgebraPresentation, act: impl Fn(&GF2Vector, &GF2Vector) -> GF2Vector, m_dim: usize) -> Check {
    let na = base.dim;
    for a in 0..na {
        for b in 0..na {
            for x in 0..m_dim {
                let xv = GF2Vector::unit(m_dim, x);
                let lhs = act(&base.product(&base.basis(a), &base.basis(b)), &xv);
                let rhs = act(&base.basis(a), &act(&base.basis(b), &xv));
                expect_eq("(ab)x = a(bx)", &[a, b, x], lhs, rhs)?;
            }
        }
    }
    if let Some(u) = &base.unit {
        for x in 0..m_dim {
            let xv = GF2Vector::unit(m_dim, x);
            expect_eq("1x = x", &[x], act(u, &xv), xv.clone())?;
        }
    }
    Ok(())
}

fn check_derivation(base: &AlgebraPresentation, d: &GF2Matrix, tag: usize) -> Check {
    let na = base.dim;
    for a in 0..na {
        for b in a..na {
            let (x, y) = (base.basis(a), base.basis(b));
            let lhs = d.mul_vec(&base.product(&x, &y));
            let mut rhs = base.product(&x, &d.mul_vec(&y));
            rhs += &base.product(&y, &d.mul_vec(&x));
            expect_eq("θ(x)(ab) = aθ(x)(b) + bθ(x)(a)", &[tag, a, b], lhs, rhs)?;
        }
    }
    Ok(())
}

pub fn verify_lie_rinehart(
    p: &LieRinehartPresentation,
) -> Result<VerificationReport, AlgebraError> {
    p.check_dims()?;
    if !p.lie.has_two_map() {
        return Err(AlgebraError::MissingTable("two_map"));
    }
    if !p.base.has_product() {
        return Err(AlgebraError::MissingTable("product"));
    }
    let (na, nl) = (p.base.dim, p.lie.dim);
    let check = || -> Check {
        check_lie(&p.lie)?;
        check_two_map(&p.lie)?;
        check_commutative_associative(&p.base)?;
        check_a_module(&p.base, |a, x| p.act(a, x), nl)?;
        for j in 0..nl {
            check_derivation(&p.base, &p.anchor[j], j)?;
        }
        for a in 0..na {
            let ma = p.base.mult_matrix(&p.base.basis(a));
            for j in 0..nl {
                let lhs = p.anchor_of(&p.action[a][j]);
                let rhs = ma.mul(&p.anchor[j]);
                expect_mat_eq("θ(ax) = aθ(x)", &[a, j], &lhs, &rhs)?;
            }
        }
        for i in 0..nl {
            for j in i + 1..nl {
                let lhs = p.anchor_of(&p.lie.bracket[i][j]);
                let rhs = p.anchor[i]
                    .mul(&p.anchor[j])
                    .add(&p.anchor[j].mul(&p.anchor[i]));
                expect_mat_eq("θ([x,y]) = [θ(x),θ(y)]", &[i, j], &lhs, &rhs)?;
            }
        }
        let s = p.lie.two_map_table();
        for j in 0..nl {
            let lhs = p.anchor_of(&s[j]);
            let rhs = p.anchor[j].mul(&p.anchor[j]);
            expect_mat_eq("θ(x^[2]) = θ(x)^2", &[j], &lhs, &rhs)?;
        }
        for i in 0..nl {
            for a in 0..na {
                let av = p.base.basis(a);
                for j in 0..nl {
                    let (x, y) = (p.lie.basis(i), p.lie.basis(j));
                    let lhs = p.lie.bracket(&x, &p.act(&av, &y));
                    let mut rhs = p.act(&av, &p.lie.bracket[i][j]);
                    rhs += &p.act(&p.theta(&x, &av), &y);
                    expect_eq("[x,ay] = a[x,y] + θ(x)(a)y", &[i, a, j], lhs, rhs)?;
                }
            }
        }
        for a in 0..na {
            let av = p.base.basis(a);
            for j in 0..nl {
                let x = p.lie.basis(j);
                let ax = p.act(&av, &x);
                let lhs = p.lie.two_map(&ax);
                let mut rhs = p.act(&p.base.square(&av), &s[j]);
                rhs += &p.act(&p.theta(&ax, &av), &x);
                expect_eq("(ax)^[2] = a^2 x^[2] + θ(ax)(a)x", &[a, j], lhs, rhs)?;
            }
        }
        Ok(())
    };
    Ok(VerificationReport::from_result(check()))
}

/// Builds the 2-map of a Lie–Rinehart algebra whose `L` is free over `A`
/// with basis `a_basis`, given values `v_k` with `(ad u_k)^2 = ad v_k`.
pub fn two_map_lie_rinehart(
    p: &LieRinehartPresentation,
    a_basis: &[GF2Vector],
    candidates: &[GF2Vector],
) -> Result<LieRinehartPresentation, AlgebraError> {
    p.check_dims()?;
    if candidates.len() != a_basis.len() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a_basis.len(),
            got: candidates.len(),
        });
    }
    if !p.is_free_basis(a_basis) {
        return Err(AlgebraError::NotFreeBasis);
    }
    for (k, (u, v)) in a_basis.iter().zip(candidates).enumerate() {
        let ad = p.lie.ad_matrix(u);
        if ad.mul(&ad) != p.lie.ad_matrix(v) {
            return Err(AlgebraError::NotInnerSquare(k));
        }
    }
    let nl = p.lie.dim;
    let mut table = Vec::with_capacity(nl);
    for j in 0..nl {
        let coeffs = p
            .decompose(a_basis, &p.lie.basis(j))
            .ok_or(AlgebraError::NotFreeBasis)?;
        let terms: Vec<GF2Vector> = coeffs
            .iter()
            .zip(a_basis)
            .map(|(a, u)| p.act(a, u))
            .collect();
        let mut value = GF2Vector::zeros(nl);
        for (k, (a, u)) in coeffs.iter().zip(a_basis).enumerate() {
            // (a u)^[2] = a^2 v + θ(a u)(a) u
            value += &p.act(&p.base.square(a), &candidates[k]);
            value += &p.act(&p.theta(&terms[k], a), u);
            for t in &terms[k + 1..] {
                value += &p.lie.bracket(&terms[k], t);
            }
        }
        table.push(value);
    }
    let mut out = p.clone();
    out.lie.two_map = Some(table);
    Ok(out)
}

/// `(A, Der(A), id)`: derivations of `A` with commutator bracket, square
/// 2-map and `(a·D)(b) = a D(b)`.
pub fn derivation_lie_rinehart(
    base: &AlgebraPresentation,
) -> Result<LieRinehartPresentation, AlgebraError> {
    base.check_dims()?;
    if !base.has_product() {
        return Err(AlgebraError::MissingTable("product"));
    }
    let n = base.dim;
    // Unknown D flattened as D[r][c] at r*n + c; column c is D(e_c).
    let idx = |r: usize, c: usize| r * n + c;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a..n {
            let ab = base.product(&base.basis(a), &base.basis(b));
            let ma = base.mult_matrix(&base.basis(a));
            let mb = base.mult_matrix(&base.basis(b));
            for r in 0..n {
                // (D(ab))_r + Σ_k ma[r][k] D[k][b] + mb[r][k] D[k][a] = 0
                let mut row = GF2Vector::zeros(n * n);
                for c in ab.iter_ones() {
                    row.flip(idx(r, c));
                }
                for k in 0..n {
                    if ma.get(r, k) {
                        row.flip(idx(k, b));
                    }
                    if mb.get(r, k) {
                        row.flip(idx(k, a));
                    }
                }
                rows.push(row);
            }
        }
    }
    let der = crate::gf2::kernel_of_rows(n * n, rows);
    let to_matrix = |v: &GF2Vector| {
        let mut m = GF2Matrix::zeros(n, n);
        for k in v.iter_ones() {
            m.set(k / n, k % n, true);
        }
        m
    };
    let coords = |m: &GF2Matrix| {
        der.coordinates(&flatten(m))
            .expect("closed under the operations")
    };
    let mats: Vec<GF2Matrix> = der.basis().iter().map(to_matrix).collect();
    let l = mats.len();
    let mut lie = AlgebraPresentation::with_names((1..=l).map(|i| format!("D{i}")).collect());
    for i in 0..l {
        for j in i + 1..l {
            let c = mats[i].mul(&mats[j]).add(&mats[j].mul(&mats[i]));
            lie.set_bracket(i, j, coords(&c));
        }
        lie.set_two_map(i, coords(&mats[i].mul(&mats[i])));
    }
    lie.ensure_two_map();
    let action = (0..n)
        .map(|a| {
            let ma = base.mult_matrix(&base.basis(a));
            mats.iter().map(|d| coords(&ma.mul(d))).collect()
        })
        .collect();
    Ok(LieRinehartPresentation {
        base: base.clone(),
        lie,
        action,
        anchor: mats,
    })
}

/// A representation of `L` on `GF(2)^dim`, optionally with an `A`-action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    pub dim: usize,
    /// `rho[j]` is the action matrix of `e^L_j`.
    pub rho: Vec<GF2Matrix>,
    /// `a_action[a]` is the action matrix of `e^A_a`.
    pub a_action: Option<Vec<GF2Matrix>>,
}

impl ModulePresentation {
    pub fn zero(lie_dim: usize) -> Self {
        Self {
            dim: 0,
            rho: vec![GF2Matrix::zeros(0, 0); lie_dim],
            a_action: None,
        }
    }

    pub fn adjoint(lie: &AlgebraPresentation) -> Self {
        Self {
            dim: lie.dim,
            rho: (0..lie.dim).map(|j| lie.ad_matrix(&lie.basis(j))).collect(),
            a_action: None,
        }
    }

    /// Trivial module `GF(2)^dim` (zero action).
    pub fn trivial(lie_dim: usize, dim: usize) -> Self {
        Self {
            dim,
            rho: vec![GF2Matrix::zeros(dim, dim); lie_dim],
            a_action: None,
        }
    }

    /// `A` itself over a Lie–Rinehart algebra `(A, L, θ)`: `ρ = θ`, `A`
    /// acting by multiplication.
    pub fn base(lr: &LieRinehartPresentation) -> Self {
        Self {
            dim: lr.base.dim,
            rho: lr.anchor.clone(),
            a_action: Some(
                (0..lr.base.dim)
                    .map(|a| lr.base.mult_matrix(&lr.base.basis(a)))
                    .collect(),
            ),
        }
    }

    pub fn rho_of(&self, x: &GF2Vector) -> GF2Matrix {
        let mut out = GF2Matrix::zeros(self.dim, self.dim);
        for j in x.iter_ones() {
            out = out.add(&self.rho[j]);
        }
        out
    }

    pub fn a_of(&self, a: &GF2Vector) -> GF2Matrix {
        let acts = self.a_action.as_ref().expect("A-action required");
        let mut out = GF2Matrix::zeros(self.dim, self.dim);
        for k in a.iter_ones() {
            out = out.add(&acts[k]);
        }
        out
    }

    fn check_dims(&self, lie_dim: usize, base_dim: Option<usize>) -> Result<(), AlgebraError> {
        let d = self.dim;
        if self.rho.len() != lie_dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: lie_dim,
                got: self.rho.len(),
            });
        }
        let bad = |m: &GF2Matrix| m.rows() != d || m.cols() != d;
        if self.rho.iter().any(bad) {
            return Err(AlgebraError::DimensionMismatch { expected: d, got: 0 });
        }
        if let (Some(acts), Some(na)) = (&self.a_action, base_dim) {
            if acts.len() != na || acts.iter().any(bad) {
                return Err(AlgebraError::DimensionMismatch {
                    expected: na,
                    got: acts.len(),
                });
            }
        }
        Ok(())
    }
}

fn check_representation(lie: &AlgebraPresentation, m: &ModulePresentation) -> Check {
    let d = lie.dim;
    for i in 0..d {
        for j in i + 1..d {
            let lhs = m.rho_of(&lie.bracket[i][j]);
            let rhs = m.rho[i].mul(&m.rho[j]).add(&m.rho[j].mul(&m.rho[i]));
            expect_mat_eq("ρ([x,y]) = [ρ(x),ρ(y)]", &[i, j], &lhs, &rhs)?;
        }
    }
    let s = lie.two_map_table();
    for i in 0..d {
        let lhs = m.rho[i].mul(&m.rho[i]);
        let rhs = m.rho_of(&s[i]);
        expect_mat_eq("ρ(x)^2 = ρ(x^[2])", &[i], &lhs, &rhs)?;
    }
    Ok(())
}

/// Restricted representation axioms.
pub fn verify_module(
    lie: &AlgebraPresentation,
    m: &ModulePresentation,
) -> Result<VerificationReport, AlgebraError> {
    lie.check_dims()?;
    m.check_dims(lie.dim, None)?;
    if !lie.has_two_map() {
        return Err(AlgebraError::MissingTable("two_map"));
    }
    Ok(VerificationReport::from_result(check_representation(lie, m)))
}

/// Restricted Lie–Rinehart module axioms: representation, `A`-module,
/// `ρ(ax) = aρ(x)` and `ρ(x)(am) = aρ(x)(m) + θ(x)(a)m`.
pub fn verify_lr_module(
    lr: &LieRinehartPresentation,
    m: &ModulePresentation,
) -> Result<VerificationReport, AlgebraError> {
    lr.check_dims()?;
    m.check_dims(lr.lie.dim, Some(lr.base.dim))?;
    if !lr.lie.has_two_map() {
        return Err(AlgebraError::MissingTable("two_map"));
    }
    if m.a_action.is_none() {
        return Err(AlgebraError::MissingTable("module A-action"));
    }
    let (na, nl) = (lr.base.dim, lr.lie.dim);
    let check = || -> Check {
        check_representation(&lr.lie, m)?;
        check_a_module(&lr.base, |a, x| m.a_of(a).mul_vec(x), m.dim)?;
        for a in 0..na {
            let av = lr.base.basis(a);
            let am = m.a_of(&av);
            for j in 0..nl {
                let lhs = m.rho_of(&lr.action[a][j]);
                let rhs = am.mul(&m.rho[j]);
                expect_mat_eq("ρ(ax) = aρ(x)", &[a, j], &lhs, &rhs)?;
                let lhs = m.rho[j].mul(&am);
                let rhs = am
                    .mul(&m.rho[j])
                    .add(&m.a_of(&lr.anchor[j].mul_vec(&av)));
                expect_mat_eq("ρ(x)(am) = aρ(x)(m) + θ(x)(a)m", &[j, a], &lhs, &rhs)?;
            }
        }
        Ok(())
    };
    Ok(VerificationReport::from_result(check()))
}
