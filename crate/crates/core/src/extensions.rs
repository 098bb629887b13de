//! Abelian extensions of restricted Lie–Rinehart algebras by strongly
//! abelian modules, classified by `H²_LR(L; M)`.
//!
//! Extensions live on `E = L ⊕ M` with the basis of `L` first; `π` is the
//! projection onto the first `dim L` coordinates and `ι` the inclusion of the
//! remaining ones.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    verify_lie_rinehart, verify_lr_module, AlgebraError, AlgebraPresentation,
    LieRinehartPresentation, ModulePresentation, Violation,
};
use crate::cochains::{CochainComplex, CochainError, RestrictedCochain};
use crate::gf2::{GF2Matrix, GF2Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("the cochain is not a Lie–Rinehart 2-cocycle")]
    NotCocycle,
    #[error("M is not strongly abelian inside E: {0}")]
    NotStronglyAbelian(String),
    #[error("σ is not a section of π at basis vector {0}")]
    NotASection(usize),
    #[error("σ is not A-linear at (a{}, x{})", .0 + 1, .1 + 1)]
    NotALinear(usize, usize),
    #[error("extensions over different base algebras or modules")]
    BaseMismatch,
    #[error("E does not project onto L: {0}")]
    NotAnExtension(String),
    #[error("module is not a restricted Lie–Rinehart module: {0}")]
    InvalidModule(Violation),
    #[error("the constructed extension fails verification: {0}")]
    Invalid(Violation),
    #[error("dimensions do not match: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// `(A, L, θ_L)`, a module `(M, ρ)` and a cocycle `(φ, ω) ∈ Z²_LR(L; M)`.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub base: LieRinehartPresentation,
    pub module: ModulePresentation,
    /// Ambient coordinates in `C²_LR(L; M)`.
    pub cocycle: GF2Vector,
    complex: Arc<CochainComplex>,
}

impl ExtensionData {
    pub fn new(
        base: LieRinehartPresentation,
        module: ModulePresentation,
        cocycle: GF2Vector,
    ) -> Result<Self, ExtensionError> {
        let complex = Arc::new(lr_complex(&base, &module)?);
        let n = complex.space(2)?.layout.ambient_dim();
        if cocycle.len() != n {
            return Err(ExtensionError::DimensionMismatch {
                expected: n,
                got: cocycle.len(),
            });
        }
        if !complex.cocycles(2)?.contains(&cocycle) {
            return Err(ExtensionError::NotCocycle);
        }
        Ok(Self {
            base,
            module,
            cocycle,
            complex,
        })
    }

    /// The split extension with zero cocycle.
    pub fn semidirect(base: LieRinehartPresentation, module: ModulePresentation) -> Result<Self, ExtensionError> {
        let complex = lr_complex(&base, &module)?;
        let n = complex.space(2)?.layout.ambient_dim();
        Self::new(base, module, GF2Vector::zeros(n))
    }

    pub fn complex(&self) -> &Arc<CochainComplex> {
        &self.complex
    }

    fn cochain(&self) -> RestrictedCochain {
        self.complex
            .cochain(2, self.cocycle.clone())
            .expect("validated on construction")
    }
}

/// The Lie–Rinehart complex after checking the module axioms.
pub fn lr_complex(
    base: &LieRinehartPresentation,
    module: &ModulePresentation,
) -> Result<CochainComplex, ExtensionError> {
    if let Some(v) = verify_lie_rinehart(base)?.violation {
        return Err(ExtensionError::Invalid(v));
    }
    if let Some(v) = verify_lr_module(base, module)?.violation {
        return Err(ExtensionError::InvalidModule(v));
    }
    Ok(CochainComplex::lie_rinehart(base, module)?)
}

/// `L ⊕ M` with `[x+u, y+v] = [x,y] + φ(x,y) + ρ(x)v + ρ(y)u`,
/// `(x+u)^[2] = x^[2] + ω(x) + ρ(x)u` and anchor `θ(x+u) = θ_L(x)`.
pub fn build_extension(e: &ExtensionData) -> Result<LieRinehartPresentation, ExtensionError> {
    let (l, m) = (&e.base.lie, &e.module);
    let (nl, nm) = (l.dim, m.dim);
    let n = nl + nm;
    let c = e.cochain();
    let names = l
        .basis_names
        .iter()
        .cloned()
        .chain((0..nm).map(|k| format!("m{}", k + 1)))
        .collect();
    let mut lie = AlgebraPresentation::with_names(names);
    let lift = |x: &GF2Vector, u: &GF2Vector| x.concat(u);
    let zl = GF2Vector::zeros(nl);
    let zm = GF2Vector::zeros(nm);
    for i in 0..nl {
        let x = l.basis(i);
        for j in i + 1..nl {
            let y = l.basis(j);
            let phi = c.eval_phi(&[x.clone(), y.clone()])?;
            lie.set_bracket(i, j, lift(&l.bracket[i][j], &phi));
        }
        for k in 0..nm {
            lie.set_bracket(i, nl + k, lift(&zl, &m.rho[i].column(k)));
        }
    }
    lie.ensure_two_map();
    for i in 0..nl {
        let x = l.basis(i);
        let w = c.eval_omega(&x, &[])?;
        lie.set_two_map(i, lift(&l.two_map(&x), &w));
    }
    let base = &e.base.base;
    let acts = m.a_action.as_ref().expect("checked by the module verifier");
    let action = (0..base.dim)
        .map(|a| {
            let mut row: Vec<GF2Vector> = (0..nl).map(|j| lift(&e.base.action[a][j], &zm)).collect();
            row.extend((0..nm).map(|k| lift(&zl, &acts[a].column(k))));
            row
        })
        .collect();
    let mut anchor = e.base.anchor.clone();
    anchor.extend(std::iter::repeat(GF2Matrix::zeros(base.dim, base.dim)).take(nm));
    let out = LieRinehartPresentation {
        base: base.clone(),
        lie,
        action,
        anchor,
    };
    debug_assert_eq!(out.lie.dim, n);
    if let Some(v) = verify_lie_rinehart(&out)?.violation {
        return Err(ExtensionError::Invalid(v));
    }
    Ok(out)
}

/// The canonical section `x ↦ x + 0` of a built extension.
pub fn canonical_section(lie_dim: usize, module_dim: usize) -> GF2Matrix {
    let mut s = GF2Matrix::zeros(lie_dim + module_dim, lie_dim);
    for i in 0..lie_dim {
        s.set(i, i, true);
    }
    s
}

fn check_extension(
    base: &LieRinehartPresentation,
    module_dim: usize,
    e: &LieRinehartPresentation,
) -> Result<(), ExtensionError> {
    let (nl, nm) = (base.lie.dim, module_dim);
    if e.lie.dim != nl + nm {
        return Err(ExtensionError::DimensionMismatch {
            expected: nl + nm,
            got: e.lie.dim,
        });
    }
    if e.base != base.base {
        return Err(ExtensionError::BaseMismatch);
    }
    for k in 0..nm {
        let u = e.lie.basis(nl + k);
        if !e.lie.two_map(&u).is_zero() {
            return Err(ExtensionError::NotStronglyAbelian(format!("m{}^[2] ≠ 0", k + 1)));
        }
        for j in k + 1..nm {
            if !e.lie.bracket[nl + k][nl + j].is_zero() {
                return Err(ExtensionError::NotStronglyAbelian(format!(
                    "[m{}, m{}] ≠ 0",
                    k + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn check_section(
    base: &LieRinehartPresentation,
    e: &LieRinehartPresentation,
    sigma: &GF2Matrix,
) -> Result<(), ExtensionError> {
    let nl = base.lie.dim;
    if sigma.rows() != e.lie.dim || sigma.cols() != nl {
        return Err(ExtensionError::DimensionMismatch {
            expected: e.lie.dim,
            got: sigma.rows(),
        });
    }
    for j in 0..nl {
        if sigma.column(j).slice(0, nl) != base.lie.basis(j) {
            return Err(ExtensionError::NotASection(j));
        }
    }
    for a in 0..base.base.dim {
        let av = base.base.basis(a);
        for j in 0..nl {
            let lhs = sigma.mul_vec(&base.act(&av, &base.lie.basis(j)));
            let rhs = e.act(&av, &sigma.column(j));
            if lhs != rhs {
                return Err(ExtensionError::NotALinear(a, j));
            }
        }
    }
    Ok(())
}

/// `ι⁻¹(v)`, failing when `v` has a component along `L`.
fn iota_inv(nl: usize, nm: usize, v: &GF2Vector, what: &str) -> Result<GF2Vector, ExtensionError> {
    if !v.slice(0, nl).is_zero() {
        return Err(ExtensionError::NotAnExtension(what.to_string()));
    }
    Ok(v.slice(nl, nm))
}

/// `ρ(x)(m) = ι⁻¹[σ(x), ι(m)]_E`, with the `A`-action read off `E`.
pub fn induced_module(
    base: &LieRinehartPresentation,
    module_dim: usize,
    e: &LieRinehartPresentation,
    sigma: &GF2Matrix,
) -> Result<ModulePresentation, ExtensionError> {
    check_extension(base, module_dim, e)?;
    check_section(base, e, sigma)?;
    let (nl, nm) = (base.lie.dim, module_dim);
    let iota = |k: usize| GF2Vector::unit(nl + nm, nl + k);
    let mut rho = Vec::with_capacity(nl);
    for j in 0..nl {
        let sx = sigma.column(j);
        let cols = (0..nm)
            .map(|k| iota_inv(nl, nm, &e.lie.bracket(&sx, &iota(k)), "[σ(x), ι(m)] ∉ ι(M)"))
            .collect::<Result<Vec<_>, _>>()?;
        rho.push(GF2Matrix::from_columns(nm, &cols));
    }
    let a_action = (0..base.base.dim)
        .map(|a| {
            let cols = (0..nm)
                .map(|k| iota_inv(nl, nm, &e.act(&base.base.basis(a), &iota(k)), "a·ι(m) ∉ ι(M)"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GF2Matrix::from_columns(nm, &cols))
        })
        .collect::<Result<Vec<_>, ExtensionError>>()?;
    Ok(ModulePresentation {
        dim: nm,
        rho,
        a_action: Some(a_action),
    })
}

/// `φ(x,y) = ι⁻¹([σx, σy]_E + σ[x,y]_L)`, `ω(x) = ι⁻¹(σ(x)^[2] + σ(x^[2]))`
/// on basis vectors, as coordinates in `C²_LR(L; M)`. The module induced by
/// `σ` must equal `module`.
pub fn cocycle_from_splitting(
    base: &LieRinehartPresentation,
    module: &ModulePresentation,
    e: &LieRinehartPresentation,
    sigma: &GF2Matrix,
) -> Result<GF2Vector, ExtensionError> {
    let induced = induced_module(base, module.dim, e, sigma)?;
    if &induced != module {
        return Err(ExtensionError::BaseMismatch);
    }
    let complex = lr_complex(base, module)?;
    let layout = complex.layout(2)?;
    let (l, nl, nm) = (&base.lie, base.lie.dim, module.dim);
    let mut c = RestrictedCochain::zero(layout.clone());
    for t in &layout.phi_index {
        let (x, y) = (l.basis(t[0]), l.basis(t[1]));
        let mut v = e.lie.bracket(&sigma.column(t[0]), &sigma.column(t[1]));
        v += &sigma.mul_vec(&l.bracket(&x, &y));
        c.set_phi(t, &iota_inv(nl, nm, &v, "π is not a bracket morphism")?);
    }
    for (i, z) in &layout.omega_index {
        let x = l.basis(*i);
        let mut v = e.lie.two_map(&sigma.column(*i));
        v += &sigma.mul_vec(&l.two_map(&x));
        c.set_omega(*i, z, &iota_inv(nl, nm, &v, "π does not preserve 2-maps")?);
    }
    if !complex.cocycles(2)?.contains(&c.coords) {
        return Err(ExtensionError::NotCocycle);
    }
    Ok(c.coords)
}

/// Whether two extensions with the same base and module differ by a
/// coboundary.
pub fn extensions_equivalent(e1: &ExtensionData, e2: &ExtensionData) -> Result<bool, ExtensionError> {
    if e1.base != e2.base || e1.module != e2.module {
        return Err(ExtensionError::BaseMismatch);
    }
    let mut diff = e1.cocycle.clone();
    diff += &e2.cocycle;
    Ok(e1.complex.is_coboundary(2, &diff)?)
}

/// `σ + ι∘τ` for an `A`-linear `τ: L → M` (`dim M × dim L`).
pub fn perturb_section(sigma: &GF2Matrix, tau: &GF2Matrix) -> GF2Matrix {
    let nl = sigma.cols();
    let mut out = sigma.clone();
    for r in 0..tau.rows() {
        for c in 0..nl {
            if tau.get(r, c) {
                out.set(nl + r, c, !out.get(nl + r, c));
            }
        }
    }
    out
}

/// Ambient coordinates in `C¹_LR(L; M)` of the map `τ` (`dim M × dim L`).
pub fn map_to_cochain(complex: &CochainComplex, tau: &GF2Matrix) -> Result<GF2Vector, ExtensionError> {
    let layout = complex.layout(1)?;
    let mut c = RestrictedCochain::zero(layout.clone());
    for (i, z) in &layout.omega_index {
        c.set_omega(*i, z, &tau.column(*i));
    }
    for t in &layout.phi_index {
        c.set_phi(t, &tau.column(t[0]));
    }
    Ok(c.coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{heisenberg3, lie_rinehart_entries};

    fn abelian_plane() -> (LieRinehartPresentation, ModulePresentation) {
        let mut base = AlgebraPresentation::with_names(vec!["1".into()]);
        base.set_product(0, 0, base.basis(0));
        base.unit = Some(base.basis(0));
        let mut lie = AlgebraPresentation::with_names(vec!["x".into(), "y".into()]);
        lie.ensure_two_map();
        let lr = LieRinehartPresentation {
            action: vec![vec![lie.basis(0), lie.basis(1)]],
            anchor: vec![GF2Matrix::zeros(1, 1); 2],
            base,
            lie,
        };
        let m = ModulePresentation {
            dim: 1,
            rho: vec![GF2Matrix::zeros(1, 1); 2],
            a_action: Some(vec![GF2Matrix::identity(1)]),
        };
        (lr, m)
    }

    #[test]
    fn heisenberg_as_central_extension() {
        let (lr, m) = abelian_plane();
        let complex = lr_complex(&lr, &m).unwrap();
        let layout = complex.layout(2).unwrap();
        let mut c = RestrictedCochain::zero(layout);
        c.set_phi(&[0, 1], &GF2Vector::unit(1, 0));
        let e = ExtensionData::new(lr, m, c.coords).unwrap();
        let ext = build_extension(&e).unwrap();
        let h = heisenberg3();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(ext.lie.bracket[i][j], h.bracket[i][j]);
            }
        }
    }

    #[test]
    fn semidirect_round_trip_is_zero() {
        for (_, lr, m) in lie_rinehart_entries() {
            let e = ExtensionData::semidirect(lr.clone(), m.clone()).unwrap();
            let ext = build_extension(&e).unwrap();
            let s = canonical_section(lr.lie.dim, m.dim);
            assert!(cocycle_from_splitting(&lr, &m, &ext, &s).unwrap().is_zero());
        }
    }

    #[test]
    fn bad_sections_are_rejected() {
        let (lr, m) = abelian_plane();
        let e = ExtensionData::semidirect(lr.clone(), m.clone()).unwrap();
        let ext = build_extension(&e).unwrap();
        let mut s = canonical_section(2, 1);
        s.set(1, 0, true);
        assert_eq!(
            cocycle_from_splitting(&lr, &m, &ext, &s).unwrap_err(),
            ExtensionError::NotASection(0)
        );
    }

    #[test]
    fn non_cocycles_are_rejected() {
        for (_, lr, m) in lie_rinehart_entries() {
            let complex = lr_complex(&lr, &m).unwrap();
            let space = complex.space(2).unwrap();
            let z = complex.cocycles(2).unwrap();
            if let Some(v) = space.constraint_basis.basis().iter().find(|v| !z.contains(v)) {
                assert_eq!(
                    ExtensionData::new(lr, m, v.clone()).unwrap_err(),
                    ExtensionError::NotCocycle
                );
            }
        }
    }

    #[test]
    fn equivalence_is_reflexive() {
        let (lr, m) = abelian_plane();
        let e = ExtensionData::semidirect(lr, m).unwrap();
        assert!(extensions_equivalent(&e, &e).unwrap());
    }
}
