//! Formal deformations of restricted Poisson algebras, their obstructions,
//! and restricted Poisson structures coming from associative deformations.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    verify_lie_rinehart, verify_restricted_poisson, AlgebraError, AlgebraPresentation,
    LieRinehartPresentation, VerificationReport, Violation,
};
use crate::cochains::{CochainComplex, CochainError, CohomologyResult, RestrictedCochain};
use crate::gf2::{quotient, GF2Matrix, GF2Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("term {0} is not a Poisson 2-cochain")]
    NotAPoissonCochain(usize),
    #[error("the obstruction pair is not a Poisson 3-cochain")]
    ObstructionNotACochain,
    #[error("deformations over different algebras")]
    BaseMismatch,
    #[error("not a restricted Poisson algebra: {0}")]
    NotPoisson(Violation),
    #[error("μ1 is not a Hochschild 2-cocycle at ({}, {}, {})", .0[0] + 1, .0[1] + 1, .0[2] + 1)]
    NotCocycle([usize; 3]),
    #[error("order-2 associativity fails at ({}, {}, {})", .0[0] + 1, .0[1] + 1, .0[2] + 1)]
    NotAssociativeOrder2([usize; 3]),
    #[error("{0}(a^2, b) = 0 fails")]
    SquareConditionFailed(&'static str),
    #[error("the constructed structure fails verification: {0}")]
    Invalid(Violation),
    #[error("Hochschild differential is only provided in degrees 0..=3, got {0}")]
    DegreeUnsupported(usize),
    #[error("a Hochschild cochain of length {got} does not match {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// A deformation `μ_(k) = {,} + Σ t^i μ_i`, `ω_(k) = (-)^{2} + Σ t^i ω_i`
/// of order `k = terms.len()`; each term is a vector in the ambient
/// coordinates of `C²_PA`.
#[derive(Debug, Clone)]
pub struct DeformationData {
    pub complex: Arc<CochainComplex>,
    pub terms: Vec<GF2Vector>,
}

/// The Poisson complex of `p` after checking the restricted Poisson axioms.
pub fn poisson_complex(p: &AlgebraPresentation) -> Result<Arc<CochainComplex>, DeformationError> {
    if let Some(v) = verify_restricted_poisson(p)?.violation {
        return Err(DeformationError::NotPoisson(v));
    }
    Ok(Arc::new(CochainComplex::poisson(p)?))
}

impl DeformationData {
    /// Checks that every term is a Poisson 2-cochain.
    pub fn new(complex: Arc<CochainComplex>, terms: Vec<GF2Vector>) -> Result<Self, DeformationError> {
        let space = complex.space(2)?;
        for (i, t) in terms.iter().enumerate() {
            if t.len() != space.layout.ambient_dim() || !space.satisfies_constraints(t) {
                return Err(DeformationError::NotAPoissonCochain(i + 1));
            }
        }
        Ok(Self { complex, terms })
    }

    /// The order-0 deformation of `complex`'s algebra.
    pub fn trivial(complex: Arc<CochainComplex>, order: usize) -> Result<Self, DeformationError> {
        let n = complex.space(2)?.layout.ambient_dim();
        Self::new(complex, vec![GF2Vector::zeros(n); order])
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn base(&self) -> &AlgebraPresentation {
        self.complex.lie()
    }

    fn term(&self, i: usize) -> RestrictedCochain {
        self.complex
            .cochain(2, self.terms[i - 1].clone())
            .expect("validated on construction")
    }

    fn evaluator(&self) -> Terms<'_> {
        Terms {
            base: self.base(),
            terms: (1..=self.order()).map(|i| self.term(i)).collect(),
        }
    }

    /// Coefficientwise check that `(μ_(k), ω_(k))` is a restricted Lie
    /// structure modulo `t^{k+1}`: Jacobi on basis triples and
    /// `[x^[2], y] = [x, [x, y]]` on basis `y` and every `x` (basis `x` only
    /// above dimension 6). Witnesses start with the order of `t`.
    pub fn verify_truncated(&self) -> VerificationReport {
        let ev = self.evaluator();
        let p = self.base();
        let d = p.dim;
        let k = self.order();
        let xs: Vec<GF2Vector> = if d <= 6 {
            (1..1u64 << d).map(|m| GF2Vector::from_mask(d, m)).collect()
        } else {
            (0..d).map(|i| p.basis(i)).collect()
        };
        for m in 0..=k {
            for a in 0..d {
                for b in a + 1..d {
                    for c in b + 1..d {
                        let (x, y, z) = (p.basis(a), p.basis(b), p.basis(c));
                        let mut lhs = GF2Vector::zeros(d);
                        for i in 0..=m {
                            let j = m - i;
                            lhs += &ev.mu(i, &x, &ev.mu(j, &y, &z));
                            lhs += &ev.mu(i, &y, &ev.mu(j, &z, &x));
                            lhs += &ev.mu(i, &z, &ev.mu(j, &x, &y));
                        }
                        if !lhs.is_zero() {
                            return VerificationReport {
                                violation: Some(Violation {
                                    identity: JACOBI_ORDER.into(),
                                    witness: vec![m, a, b, c],
                                    lhs,
                                    rhs: GF2Vector::zeros(d),
                                }),
                            };
                        }
                    }
                }
            }
            for x in &xs {
                for b in 0..d {
                    let y = p.basis(b);
                    let mut lhs = GF2Vector::zeros(d);
                    let mut rhs = GF2Vector::zeros(d);
                    for i in 0..=m {
                        let j = m - i;
                        lhs += &ev.mu(i, &ev.omega(j, x), &y);
                        rhs += &ev.mu(i, x, &ev.mu(j, x, &y));
                    }
                    if lhs != rhs {
                        let mut witness = vec![m];
                        witness.extend(x.iter_ones());
                        witness.push(b);
                        return VerificationReport {
                            violation: Some(Violation {
                                identity: RESTRICTED_ORDER.into(),
                                witness,
                                lhs,
                                rhs,
                            }),
                        };
                    }
                }
            }
        }
        VerificationReport::pass()
    }
}

pub const JACOBI_ORDER: &str = "Σ_{i+j=m} μ_i(x,μ_j(y,z)) + cyclic = 0";
pub const RESTRICTED_ORDER: &str = "Σ_{i+j=m} μ_i(ω_j(x),y) = Σ_{i+j=m} μ_i(x,μ_j(x,y))";

/// `μ_i`, `ω_i` with `μ_0`, `ω_0` the undeformed structure.
struct Terms<'a> {
    base: &'a AlgebraPresentation,
    terms: Vec<RestrictedCochain>,
}

impl Terms<'_> {
    fn mu(&self, i: usize, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
        if i == 0 {
            self.base.bracket(x, y)
        } else {
            self.terms[i - 1]
                .eval_phi(&[x.clone(), y.clone()])
                .expect("degree 2")
        }
    }

    fn omega(&self, i: usize, x: &GF2Vector) -> GF2Vector {
        if i == 0 {
            self.base.two_map(x)
        } else {
            self.terms[i - 1].eval_omega(x, &[]).expect("degree 2")
        }
    }
}

/// `H²_PA` together with an order-1 deformation per representative.
pub fn infinitesimal_classes(
    p: &AlgebraPresentation,
) -> Result<(CohomologyResult, Vec<DeformationData>), DeformationError> {
    let complex = poisson_complex(p)?;
    let h = complex.cohomology(2)?;
    let defs = h
        .representatives
        .iter()
        .map(|r| DeformationData::new(complex.clone(), vec![r.coords.clone()]))
        .collect::<Result<_, _>>()?;
    Ok((h, defs))
}

/// `(obs⁽¹⁾_{k+1}, obs⁽²⁾_{k+1})` as a degree-3 cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionPair {
    /// Ambient coordinates in `C³_PA`.
    pub coords: GF2Vector,
    /// `(μ_{k+1}, ω_{k+1}) ∈ C²_PA` with `d²(μ_{k+1}, ω_{k+1})` equal to the
    /// obstruction, when one exists.
    pub coboundary_witness: Option<GF2Vector>,
}

impl ObstructionPair {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

/// Evaluates the two obstruction sums on basis tuples.
pub fn obstruction(d: &DeformationData) -> Result<ObstructionPair, DeformationError> {
    let layout = d.complex.layout(3)?;
    let space = d.complex.space(3)?;
    let ev = d.evaluator();
    let p = d.base();
    let k = d.order();
    let mut out = RestrictedCochain::zero(layout.clone());
    for t in &layout.phi_index {
        let (x, y, z) = (p.basis(t[0]), p.basis(t[1]), p.basis(t[2]));
        let mut v = GF2Vector::zeros(p.dim);
        for i in 1..=k {
            let j = k + 1 - i;
            v += &ev.mu(i, &x, &ev.mu(j, &y, &z));
            v += &ev.mu(i, &y, &ev.mu(j, &z, &x));
            v += &ev.mu(i, &z, &ev.mu(j, &x, &y));
        }
        out.set_phi(t, &v);
    }
    for (a, z) in &layout.omega_index {
        let (x, y) = (p.basis(*a), p.basis(z[0]));
        let mut v = GF2Vector::zeros(p.dim);
        for i in 1..=k {
            let j = k + 1 - i;
            v += &ev.mu(i, &y, &ev.omega(j, &x));
            v += &ev.mu(i, &x, &ev.mu(j, &x, &y));
        }
        out.set_omega(*a, z, &v);
    }
    let coords = out.coords;
    if !space.satisfies_constraints(&coords) {
        return Err(DeformationError::ObstructionNotACochain);
    }
    let coboundary_witness = d.complex.solve_coboundary(3, &coords)?;
    Ok(ObstructionPair {
        coords,
        coboundary_witness,
    })
}

#[derive(Debug, Clone)]
pub enum Extension {
    Extended(DeformationData),
    /// The obstruction is not a coboundary; `class` holds its coordinates in
    /// `H³_PA` when it is a cocycle.
    Obstructed {
        obstruction: ObstructionPair,
        class: Option<GF2Vector>,
    },
}

/// Extends an order-`k` deformation to order `k+1` when the obstruction is
/// a coboundary of a Poisson 2-cochain.
pub fn extend_deformation(d: &DeformationData) -> Result<Extension, DeformationError> {
    let obs = obstruction(d)?;
    match &obs.coboundary_witness {
        Some(next) => {
            let mut terms = d.terms.clone();
            terms.push(next.clone());
            Ok(Extension::Extended(DeformationData::new(d.complex.clone(), terms)?))
        }
        None => {
            let z = d.complex.cocycles(3)?;
            let class = if z.contains(&obs.coords) {
                let b = d.complex.coboundaries(3)?;
                let q = quotient(&z, &b).expect("B ⊆ Z");
                Some(q.class_coordinates(&obs.coords))
            } else {
                None
            };
            Ok(Extension::Obstructed {
                obstruction: obs,
                class,
            })
        }
    }
}

/// Whether the first-order terms differ by a Poisson coboundary.
pub fn equivalent_infinitesimal(
    d1: &DeformationData,
    d2: &DeformationData,
) -> Result<bool, DeformationError> {
    if d1.base() != d2.base() {
        return Err(DeformationError::BaseMismatch);
    }
    let n = d1.complex.space(2)?.layout.ambient_dim();
    let first = |d: &DeformationData| d.terms.first().cloned().unwrap_or_else(|| GF2Vector::zeros(n));
    let mut diff = first(d1);
    diff += &first(d2);
    Ok(d1.complex.is_coboundary(2, &diff)?)
}

/// First-order gauge transformation by `Ψ = id + tψ` with `ψ ∈ C¹_PA`
/// (ambient coordinates): `(μ_1, ω_1) ↦ (μ_1, ω_1) + d¹ψ`.
pub fn gauge(d: &DeformationData, psi: &GF2Vector) -> Result<DeformationData, DeformationError> {
    if !d.complex.is_cochain(1, psi)? {
        return Err(DeformationError::NotAPoissonCochain(0));
    }
    let mut terms = d.terms.clone();
    let dpsi = d.complex.apply_differential(1, psi)?;
    match terms.first_mut() {
        Some(t) => *t += &dpsi,
        None => terms.push(dpsi),
    }
    DeformationData::new(d.complex.clone(), terms)
}

/// Index of `(a_1, …, a_n; c)` in `Hom(A^{⊗n}, A)`.
fn tensor_index(d: usize, args: &[usize], c: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * d + a) * d + c
}

/// Matrix of the Hochschild differential `d^n_H` on full tensor
/// coordinates, `n ≤ 3`:
/// `(d^n φ)(a_1..a_{n+1}) = a_1 φ(a_2..) + Σ φ(.., a_i a_{i+1}, ..) + φ(a_1..a_n) a_{n+1}`.
pub fn hochschild_differential(a: &AlgebraPresentation, n: usize) -> Result<GF2Matrix, DeformationError> {
    if n > 3 {
        return Err(DeformationError::DegreeUnsupported(n));
    }
    if !a.has_product() {
        return Err(AlgebraError::MissingTable("product").into());
    }
    let d = a.dim;
    let rows = d.pow(n as u32 + 1) * d;
    let cols = d.pow(n as u32) * d;
    let mut m = GF2Matrix::zeros(rows, cols);
    let mut args = vec![0; n + 1];
    for idx in 0..d.pow(n as u32 + 1) {
        let mut r = idx;
        for k in (0..=n).rev() {
            args[k] = r % d;
            r /= d;
        }
        // Output coordinate c of d^n φ at `args` is a sum of input
        // coordinates; record each with its coefficient vector.
        let mut add = |inner: &[usize], outer: &GF2Vector| {
            // `outer` is the element that multiplies φ(inner) (or the unit
            // when `None`-like all-ones handled by caller).
            for c_in in 0..d {
                let prod = a.product(outer, &a.basis(c_in));
                for c_out in prod.iter_ones() {
                    let row = tensor_index(d, &args, c_out);
                    let col = tensor_index(d, inner, c_in);
                    m.set(row, col, !m.get(row, col));
                }
            }
        };
        add(&args[1..], &a.basis(args[0]));
        add(&args[..n], &a.basis(args[n]));
        for i in 0..n {
            let prod = a.product(&a.basis(args[i]), &a.basis(args[i + 1]));
            for p in prod.iter_ones() {
                let mut inner: Vec<usize> = args[..i].to_vec();
                inner.push(p);
                inner.extend_from_slice(&args[i + 2..]);
                for c in 0..d {
                    let row = tensor_index(d, &args, c);
                    let col = tensor_index(d, &inner, c);
                    m.set(row, col, !m.get(row, col));
                }
            }
        }
    }
    Ok(m)
}

/// A bilinear map `A × A → A` in full tensor coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilinear {
    pub dim: usize,
    pub coords: GF2Vector,
}

impl Bilinear {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coords: GF2Vector::zeros(dim * dim * dim),
        }
    }

    pub fn set(&mut self, a: usize, b: usize, value: &GF2Vector) {
        for c in 0..self.dim {
            self.coords.set(tensor_index(self.dim, &[a, b], c), value.get(c));
        }
    }

    pub fn eval(&self, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
        let d = self.dim;
        let mut out = GF2Vector::zeros(d);
        for a in x.iter_ones() {
            for b in y.iter_ones() {
                for c in 0..d {
                    if self.coords.get(tensor_index(d, &[a, b], c)) {
                        out.flip(c);
                    }
                }
            }
        }
        out
    }
}

/// `(A, μ_1⁻, ω_{μ_1})` for an order-2 associative deformation
/// `ab + tμ_1 + t²μ_2` of a commutative associative `A`.
pub fn poisson_from_assoc_deformation(
    a: &AlgebraPresentation,
    mu1: &Bilinear,
    mu2: &Bilinear,
) -> Result<AlgebraPresentation, DeformationError> {
    let d = a.dim;
    for mu in [mu1, mu2] {
        if mu.dim != d || mu.coords.len() != d * d * d {
            return Err(DeformationError::LengthMismatch {
                expected: d * d * d,
                got: mu.coords.len(),
            });
        }
    }
    let d2 = hochschild_differential(a, 2)?;
    let image = d2.mul_vec(&mu1.coords);
    if let Some(i) = image.lowest_one() {
        let t = i / d;
        return Err(DeformationError::NotCocycle([t / (d * d), t / d % d, t % d]));
    }
    let mu = |i: usize, x: &GF2Vector, y: &GF2Vector| match i {
        0 => a.product(x, y),
        1 => mu1.eval(x, y),
        _ => mu2.eval(x, y),
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                let mut diff = GF2Vector::zeros(d);
                for s in 0..=2 {
                    diff += &mu(s, &x, &mu(2 - s, &y, &z));
                    diff += &mu(s, &mu(2 - s, &x, &y), &z);
                }
                if !diff.is_zero() {
                    return Err(DeformationError::NotAssociativeOrder2([i, j, k]));
                }
            }
        }
    }
    // Frobenius is additive, so basis values decide; all elements are also
    // scanned for small algebras.
    let xs: Vec<GF2Vector> = if d <= 6 {
        (1..1u64 << d).map(|m| GF2Vector::from_mask(d, m)).collect()
    } else {
        (0..d).map(|i| a.basis(i)).collect()
    };
    for x in &xs {
        let x2 = a.square(x);
        for j in 0..d {
            let y = a.basis(j);
            if !mu1.eval(&x2, &y).is_zero() {
                return Err(DeformationError::SquareConditionFailed("μ1"));
            }
            let mut m2 = mu2.eval(&x2, &y);
            m2 += &mu2.eval(&y, &x2);
            if !m2.is_zero() {
                return Err(DeformationError::SquareConditionFailed("μ2⁻"));
            }
        }
    }
    let mut out = a.clone();
    for i in 0..d {
        for j in i + 1..d {
            let mut v = mu1.eval(&a.basis(i), &a.basis(j));
            v += &mu1.eval(&a.basis(j), &a.basis(i));
            out.set_bracket(i, j, v);
        }
        out.set_bracket(i, i, GF2Vector::zeros(d));
    }
    out.ensure_two_map();
    for i in 0..d {
        out.set_two_map(i, mu1.eval(&a.basis(i), &a.basis(i)));
    }
    if let Some(v) = verify_restricted_poisson(&out)?.violation {
        return Err(DeformationError::Invalid(v));
    }
    Ok(out)
}

/// `A ⊕ L` with `(a+x)(b+y) = ab + ay + bx`,
/// `{a+x, b+y} = [x,y] + θ(x)(b) + θ(y)(a)`, `(a+x)^{2} = x^[2] + θ(x)(a)`.
/// Basis: that of `A`, then that of `L`.
pub fn semidirect_poisson(lr: &LieRinehartPresentation) -> Result<AlgebraPresentation, DeformationError> {
    if let Some(v) = verify_lie_rinehart(lr)?.violation {
        return Err(DeformationError::Invalid(v));
    }
    let (na, nl) = (lr.base.dim, lr.lie.dim);
    let n = na + nl;
    let names = lr
        .base
        .basis_names
        .iter()
        .chain(&lr.lie.basis_names)
        .cloned()
        .collect();
    let mut p = AlgebraPresentation::with_names(names);
    let embed_a = |v: &GF2Vector| {
        let mut out = GF2Vector::zeros(n);
        out.xor_at(0, v);
        out
    };
    let embed_l = |v: &GF2Vector| {
        let mut out = GF2Vector::zeros(n);
        out.xor_at(na, v);
        out
    };
    p.ensure_product();
    p.ensure_two_map();
    for a in 0..na {
        for b in a..na {
            p.set_product(a, b, embed_a(&lr.base.product(&lr.base.basis(a), &lr.base.basis(b))));
        }
        for j in 0..nl {
            p.set_product(a, na + j, embed_l(&lr.act(&lr.base.basis(a), &lr.lie.basis(j))));
            p.set_bracket(a, na + j, embed_a(&lr.theta(&lr.lie.basis(j), &lr.base.basis(a))));
        }
    }
    for i in 0..nl {
        for j in i + 1..nl {
            p.set_bracket(na + i, na + j, embed_l(&lr.lie.bracket[i][j]));
        }
        p.set_two_map(na + i, embed_l(&lr.lie.two_map(&lr.lie.basis(i))));
    }
    p.unit = lr.base.unit.as_ref().map(embed_a);
    if let Some(v) = verify_restricted_poisson(&p)?.violation {
        return Err(DeformationError::Invalid(v));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dual_numbers, dual_numbers_derivations, heisenberg3, rigid3};

    #[test]
    fn zero_deformation_has_zero_obstruction() {
        let c = poisson_complex(&heisenberg3()).unwrap();
        let d = DeformationData::trivial(c, 1).unwrap();
        let o = obstruction(&d).unwrap();
        assert!(o.is_zero());
        assert!(o.coboundary_witness.is_some());
        assert!(d.verify_truncated().is_ok());
    }

    #[test]
    fn rigid_has_no_classes() {
        let (h, defs) = infinitesimal_classes(&rigid3()).unwrap();
        assert_eq!(h.dim_h, 0);
        assert!(defs.is_empty());
    }

    #[test]
    fn non_cochain_terms_are_rejected() {
        let c = poisson_complex(&heisenberg3()).unwrap();
        let n = c.space(2).unwrap().layout.ambient_dim();
        let bad = (0..n)
            .map(|i| GF2Vector::unit(n, i))
            .find(|v| !c.space(2).unwrap().satisfies_constraints(v))
            .unwrap();
        assert_eq!(
            DeformationData::new(c, vec![bad]).unwrap_err(),
            DeformationError::NotAPoissonCochain(1)
        );
    }

    #[test]
    fn hochschild_square_is_zero() {
        let a = dual_numbers();
        let d1 = hochschild_differential(&a, 1).unwrap();
        let d2 = hochschild_differential(&a, 2).unwrap();
        assert!(d2.mul(&d1).is_zero());
        let d0 = hochschild_differential(&a, 0).unwrap();
        assert!(d1.mul(&d0).is_zero());
    }

    #[test]
    fn hochschild_of_identity() {
        // (d¹ id)(a, b) = a b + ab + ab = ab
        let a = dual_numbers();
        let d1 = hochschild_differential(&a, 1).unwrap();
        let id = GF2Vector::from_indices(4, [tensor_index(2, &[0], 0), tensor_index(2, &[1], 1)]);
        let img = d1.mul_vec(&id);
        for i in 0..2 {
            for j in 0..2 {
                let ab = a.product(&a.basis(i), &a.basis(j));
                for c in 0..2 {
                    assert_eq!(img.get(tensor_index(2, &[i, j], c)), ab.get(c));
                }
            }
        }
    }

    #[test]
    fn zero_associative_deformation() {
        let a = dual_numbers();
        let p = poisson_from_assoc_deformation(&a, &Bilinear::zero(2), &Bilinear::zero(2)).unwrap();
        assert!(p.bracket.iter().flatten().all(GF2Vector::is_zero));
        assert!(p.two_map.unwrap().iter().all(GF2Vector::is_zero));
    }

    #[test]
    fn semidirect_of_derivations() {
        let p = semidirect_poisson(&dual_numbers_derivations()).unwrap();
        assert_eq!(p.dim, 4);
        assert!(verify_restricted_poisson(&p).unwrap().is_ok());
    }
}
