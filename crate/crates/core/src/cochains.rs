//! Chevalley–Eilenberg, restricted, Lie–Rinehart and Poisson cochain
//! complexes in coordinates.
//!
//! Coordinate layout in degree `n` with `d = dim L`, `m = dim M`:
//! * `n = 0`: the `m` coordinates of `M`;
//! * `n = 1`: `φ(e_i)_c` at `i*m + c`;
//! * `n ≥ 2`: `φ` on strictly increasing `n`-tuples (lexicographic), then,
//!   except for CE, `ω(e_i, Z)` on pairs `(i, Z)` with `Z` a strictly
//!   increasing `(n-2)`-tuple, ordered by `i` then `Z`.
//!
//! `ω` at a non-basis first argument is defined by the sum rule
//! `ω(x+y, Z) = ω(x, Z) + ω(y, Z) + φ(x, y, Z)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::algebra::{AlgebraPresentation, LieRinehartPresentation, ModulePresentation};
use crate::gf2::{kernel_of_rows, quotient, Echelon, GF2Matrix, GF2Vector, Subspace};

pub const DEFAULT_COORD_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    CE,
    RES,
    LR,
    PA,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::CE, Theory::RES, Theory::LR, Theory::PA];

    fn has_omega(self, degree: usize) -> bool {
        self != Theory::CE && degree >= 2
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::CE => "CE",
            Theory::RES => "RES",
            Theory::LR => "LR",
            Theory::PA => "PA",
        })
    }
}

impl FromStr for Theory {
    type Err = CochainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "CE" => Ok(Theory::CE),
            "RES" => Ok(Theory::RES),
            "LR" => Ok(Theory::LR),
            "PA" => Ok(Theory::PA),
            _ => Err(CochainError::UnknownTheory(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("degree {degree} needs {coords} coordinates, above the cap of {cap}")]
    DegreeTooLarge {
        degree: usize,
        coords: u128,
        cap: usize,
    },
    #[error("theory mismatch: expected {expected}, got {got}")]
    TheoryMismatch { expected: Theory, got: Theory },
    #[error("differential of basis cochain {index} in degree {degree} violates the degree-{} constraints", degree + 1)]
    ConstraintViolation { degree: usize, index: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("unknown theory {0:?}")]
    UnknownTheory(String),
    #[error("module has dimension data inconsistent with the algebra")]
    ModuleMismatch,
    #[error("the {0} theory needs an A-action on the module")]
    MissingModuleAction(Theory),
    #[error("a cochain vector of length {got} does not match the ambient dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Index sets and coordinate arithmetic for one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainLayout {
    pub theory: Theory,
    pub degree: usize,
    pub dim_l: usize,
    pub dim_m: usize,
    pub phi_index: Vec<Vec<usize>>,
    pub omega_index: Vec<(usize, Vec<usize>)>,
    /// `rank_table[j][v]` = number of `j`-subsets of `0..v` (binomial `C(v, j)`).
    binom: Vec<Vec<usize>>,
}

impl CochainLayout {
    pub fn new(theory: Theory, degree: usize, dim_l: usize, dim_m: usize) -> Self {
        let phi_index = combinations(dim_l, degree);
        let omega_index = if theory.has_omega(degree) {
            let zs = combinations(dim_l, degree - 2);
            (0..dim_l)
                .flat_map(|i| zs.iter().map(move |z| (i, z.clone())))
                .collect()
        } else {
            Vec::new()
        };
        let binom = (0..=degree)
            .map(|j| (0..=dim_l).map(|v| binomial(v, j) as usize).collect())
            .collect();
        Self {
            theory,
            degree,
            dim_l,
            dim_m,
            phi_index,
            omega_index,
            binom,
        }
    }

    /// Coordinate count without building index lists.
    pub fn ambient_count(theory: Theory, degree: usize, dim_l: usize, dim_m: usize) -> u128 {
        let mut tuples = binomial(dim_l, degree);
        if theory.has_omega(degree) {
            tuples += dim_l as u128 * binomial(dim_l, degree - 2);
        }
        tuples * dim_m as u128
    }

    pub fn ambient_dim(&self) -> usize {
        (self.phi_index.len() + self.omega_index.len()) * self.dim_m
    }

    pub fn phi_dim(&self) -> usize {
        self.phi_index.len() * self.dim_m
    }

    pub fn has_omega(&self) -> bool {
        self.theory.has_omega(self.degree)
    }

    /// Lexicographic rank of a strictly increasing tuple of length `k`.
    fn rank(&self, tuple: &[usize]) -> usize {
        let n = self.dim_l;
        let k = tuple.len();
        // rank = C(n,k) - 1 - colex rank of the complement-reversed tuple.
        let mut colex = 0;
        for (i, &t) in tuple.iter().enumerate() {
            let r = n - 1 - t;
            colex += self.binom[k - i][r];
        }
        self.binom[k][n] - 1 - colex
    }

    /// Coordinate of `φ(tuple)_c` for a sorted, duplicate-free tuple.
    pub fn phi_coord(&self, tuple: &[usize], c: usize) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        self.rank(tuple) * self.dim_m + c
    }

    /// Coordinate of `ω(e_i, z)_c` for a sorted, duplicate-free `z`.
    pub fn omega_coord(&self, i: usize, z: &[usize], c: usize) -> usize {
        debug_assert_eq!(z.len() + 2, self.degree);
        let per = self.binom[self.degree - 2][self.dim_l];
        self.phi_dim() + (i * per + self.rank(z)) * self.dim_m + c
    }

    /// Pushes the coordinates whose sum is `φ(args)_c`, where each argument
    /// is a support list of an element; alternating multilinear expansion.
    pub fn phi_terms(&self, args: &[&[usize]], c: usize, out: &mut Vec<usize>) {
        debug_assert_eq!(args.len(), self.degree);
        let mut pick = Vec::with_capacity(args.len());
        self.expand(args, &mut pick, &mut |t| out.push(self.phi_coord(t, c)));
    }

    /// Coordinates summing to `ω(e_i, zs)_c` (linear in each `z`).
    pub fn omega_terms(&self, i: usize, zs: &[&[usize]], c: usize, out: &mut Vec<usize>) {
        debug_assert_eq!(zs.len() + 2, self.degree);
        let mut pick = Vec::with_capacity(zs.len());
        self.expand(zs, &mut pick, &mut |t| out.push(self.omega_coord(i, t, c)));
    }

    /// Coordinates summing to `ω(x, zs)_c` for `x` with support `xs`:
    /// `Σ ω(e_k, zs) + Σ_{k<l} φ(e_k, e_l, zs)`.
    pub fn omega_general_terms(&self, xs: &[usize], zs: &[&[usize]], c: usize, out: &mut Vec<usize>) {
        for (a, &k) in xs.iter().enumerate() {
            self.omega_terms(k, zs, c, out);
            for &l in &xs[a + 1..] {
                let (ka, la) = ([k], [l]);
                let mut args: Vec<&[usize]> = vec![&ka, &la];
                args.extend_from_slice(zs);
                self.phi_terms(&args, c, out);
            }
        }
    }

    fn expand(&self, args: &[&[usize]], pick: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
        if pick.len() == args.len() {
            let mut sorted = pick.clone();
            sorted.sort_unstable();
            if sorted.windows(2).all(|w| w[0] != w[1]) {
                emit(&sorted);
            }
            return;
        }
        for &k in args[pick.len()] {
            if pick.contains(&k) {
                continue;
            }
            pick.push(k);
            self.expand(args, pick, emit);
            pick.pop();
        }
    }
}

fn parity(v: &GF2Vector, coords: &[usize]) -> bool {
    coords.iter().fold(false, |acc, &k| acc ^ v.get(k))
}

/// Cancels repeated coordinates (XOR semantics).
fn normalize(terms: &mut Vec<usize>) {
    terms.sort_unstable();
    let mut out = Vec::with_capacity(terms.len());
    let mut i = 0;
    while i < terms.len() {
        let mut j = i;
        while j < terms.len() && terms[j] == terms[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(terms[i]);
        }
        i = j;
    }
    *terms = out;
}

/// A cochain `(φ, ω)` in coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedCochain {
    pub layout: Arc<CochainLayout>,
    pub coords: GF2Vector,
}

impl RestrictedCochain {
    pub fn zero(layout: Arc<CochainLayout>) -> Self {
        let n = layout.ambient_dim();
        Self {
            layout,
            coords: GF2Vector::zeros(n),
        }
    }

    pub fn degree(&self) -> usize {
        self.layout.degree
    }

    fn check_args(&self, args: &[GF2Vector], expected: usize) -> Result<(), CochainError> {
        if args.len() != expected {
            return Err(CochainError::ArityMismatch {
                expected,
                got: args.len(),
            });
        }
        Ok(())
    }

    /// `φ(args)` (for degree 0 the module element itself).
    pub fn eval_phi(&self, args: &[GF2Vector]) -> Result<GF2Vector, CochainError> {
        let l = &self.layout;
        self.check_args(args, l.degree)?;
        let supports: Vec<Vec<usize>> = args.iter().map(|a| a.iter_ones().collect()).collect();
        let refs: Vec<&[usize]> = supports.iter().map(|s| s.as_slice()).collect();
        let mut out = GF2Vector::zeros(l.dim_m);
        let mut terms = Vec::new();
        for c in 0..l.dim_m {
            terms.clear();
            l.phi_terms(&refs, c, &mut terms);
            if parity(&self.coords, &terms) {
                out.set(c, true);
            }
        }
        Ok(out)
    }

    /// `ω(x, zs)`, using the sum rule in `x`.
    pub fn eval_omega(&self, x: &GF2Vector, zs: &[GF2Vector]) -> Result<GF2Vector, CochainError> {
        let l = &self.layout;
        if !l.has_omega() {
            return Err(CochainError::ArityMismatch {
                expected: 0,
                got: zs.len() + 1,
            });
        }
        self.check_args(zs, l.degree - 2)?;
        let xs: Vec<usize> = x.iter_ones().collect();
        let supports: Vec<Vec<usize>> = zs.iter().map(|a| a.iter_ones().collect()).collect();
        let refs: Vec<&[usize]> = supports.iter().map(|s| s.as_slice()).collect();
        let mut out = GF2Vector::zeros(l.dim_m);
        let mut terms = Vec::new();
        for c in 0..l.dim_m {
            terms.clear();
            l.omega_general_terms(&xs, &refs, c, &mut terms);
            if parity(&self.coords, &terms) {
                out.set(c, true);
            }
        }
        Ok(out)
    }

    /// Sets `φ(e_tuple)` for a strictly increasing tuple.
    pub fn set_phi(&mut self, tuple: &[usize], value: &GF2Vector) {
        for c in 0..self.layout.dim_m {
            let k = self.layout.phi_coord(tuple, c);
            self.coords.set(k, value.get(c));
        }
    }

    /// Sets `ω(e_i, z)` for a strictly increasing `z`.
    pub fn set_omega(&mut self, i: usize, z: &[usize], value: &GF2Vector) {
        for c in 0..self.layout.dim_m {
            let k = self.layout.omega_coord(i, z, c);
            self.coords.set(k, value.get(c));
        }
    }
}

/// Result of a cohomology computation.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub theory: Theory,
    pub degree: usize,
    /// Dimension of the (constrained) cochain space.
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    /// Canonical representatives of a basis of `H = Z/B`.
    pub representatives: Vec<RestrictedCochain>,
    pub z: Subspace,
    pub b: Subspace,
}

/// Sparse linear map given by the output coordinates of each input coordinate.
#[derive(Debug)]
struct SparseMap {
    rows_out: usize,
    cols: Vec<Vec<u32>>,
}

impl SparseMap {
    fn apply(&self, v: &GF2Vector) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.rows_out);
        for i in v.iter_ones() {
            for &o in &self.cols[i] {
                out.flip(o as usize);
            }
        }
        out
    }
}

/// One degree of a complex: layout, constraint equations and their solutions.
#[derive(Debug)]
pub struct CochainSpace {
    pub layout: Arc<CochainLayout>,
    /// Linear equations (as coordinate sets summing to zero).
    constraints: Vec<Vec<usize>>,
    pub constraint_basis: Subspace,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.constraint_basis.dim()
    }

    pub fn satisfies_constraints(&self, v: &GF2Vector) -> bool {
        self.constraints.iter().all(|row| !parity(v, row))
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }
}

/// Module-side data of the LR and PA constraint systems.
#[derive(Debug, Clone)]
struct ALinear {
    base: AlgebraPresentation,
    /// `a·e_j` in `L`.
    act: Vec<Vec<GF2Vector>>,
    /// Action of `e^A_a` on `M`.
    a_m: Vec<GF2Matrix>,
    /// Action of `(e^A_a)^2` on `M`.
    a2_m: Vec<GF2Matrix>,
}

/// A cochain complex `(C^n, d^n)` of one of the four theories.
#[derive(Debug)]
pub struct CochainComplex {
    theory: Theory,
    lie: AlgebraPresentation,
    module: ModulePresentation,
    alinear: Option<ALinear>,
    cap: usize,
    layouts: Mutex<HashMap<usize, Arc<CochainLayout>>>,
    spaces: Mutex<HashMap<usize, Arc<CochainSpace>>>,
    maps: Mutex<HashMap<usize, Arc<SparseMap>>>,
}

fn check_module(lie: &AlgebraPresentation, module: &ModulePresentation) -> Result<(), CochainError> {
    if module.rho.len() != lie.dim
        || module
            .rho
            .iter()
            .any(|r| r.rows() != module.dim || r.cols() != module.dim)
    {
        return Err(CochainError::ModuleMismatch);
    }
    Ok(())
}

impl CochainComplex {
    fn build(
        theory: Theory,
        lie: AlgebraPresentation,
        module: ModulePresentation,
        alinear: Option<ALinear>,
    ) -> Result<Self, CochainError> {
        check_module(&lie, &module)?;
        Ok(Self {
            theory,
            lie,
            module,
            alinear,
            cap: DEFAULT_COORD_CAP,
            layouts: Mutex::new(HashMap::new()),
            spaces: Mutex::new(HashMap::new()),
            maps: Mutex::new(HashMap::new()),
        })
    }

    /// Chevalley–Eilenberg complex of `lie` with coefficients in `module`.
    pub fn ce(lie: &AlgebraPresentation, module: &ModulePresentation) -> Result<Self, CochainError> {
        Self::build(Theory::CE, lie.clone(), module.clone(), None)
    }

    /// Restricted complex; `lie` must carry a 2-map.
    pub fn restricted(
        lie: &AlgebraPresentation,
        module: &ModulePresentation,
    ) -> Result<Self, CochainError> {
        let mut lie = lie.clone();
        lie.ensure_two_map();
        Self::build(Theory::RES, lie, module.clone(), None)
    }

    /// Lie–Rinehart complex; `module` must carry an A-action.
    pub fn lie_rinehart(
        lr: &LieRinehartPresentation,
        module: &ModulePresentation,
    ) -> Result<Self, CochainError> {
        let a_m = module
            .a_action
            .clone()
            .ok_or(CochainError::MissingModuleAction(Theory::LR))?;
        if a_m.len() != lr.base.dim {
            return Err(CochainError::ModuleMismatch);
        }
        let mut base = lr.base.clone();
        base.ensure_product();
        let a2_m = (0..base.dim)
            .map(|a| module.a_of(&base.square(&base.basis(a))))
            .collect();
        let mut lie = lr.lie.clone();
        lie.ensure_two_map();
        let alinear = ALinear {
            base,
            act: lr.action.clone(),
            a_m,
            a2_m,
        };
        Self::build(Theory::LR, lie, module.clone(), Some(alinear))
    }

    /// Poisson complex of `alg` with adjoint coefficients.
    pub fn poisson(alg: &AlgebraPresentation) -> Result<Self, CochainError> {
        let mut alg = alg.clone();
        alg.ensure_product();
        alg.ensure_two_map();
        let mut module = ModulePresentation::adjoint(&alg);
        let a_m: Vec<GF2Matrix> = (0..alg.dim)
            .map(|a| alg.mult_matrix(&alg.basis(a)))
            .collect();
        let a2_m = (0..alg.dim)
            .map(|a| alg.mult_matrix(&alg.square(&alg.basis(a))))
            .collect();
        module.a_action = Some(a_m.clone());
        let act = alg.product.clone().expect("product ensured");
        let alinear = ALinear {
            base: alg.clone(),
            act,
            a_m,
            a2_m,
        };
        Self::build(Theory::PA, alg, module, Some(alinear))
    }

    /// Complex of the requested theory with adjoint coefficients (PA/CE/RES)
    /// for an algebra presentation.
    pub fn for_algebra(alg: &AlgebraPresentation, theory: Theory) -> Result<Self, CochainError> {
        let adj = ModulePresentation::adjoint(alg);
        match theory {
            Theory::CE => Self::ce(alg, &adj),
            Theory::RES => Self::restricted(alg, &adj),
            Theory::PA => Self::poisson(alg),
            Theory::LR => Err(CochainError::TheoryMismatch {
                expected: Theory::PA,
                got: Theory::LR,
            }),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn lie(&self) -> &AlgebraPresentation {
        &self.lie
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    /// Coordinate layout of `C^n`; does not solve the constraints.
    pub fn layout(&self, degree: usize) -> Result<Arc<CochainLayout>, CochainError> {
        if let Some(l) = self.layouts.lock().unwrap().get(&degree) {
            return Ok(l.clone());
        }
        self.check_cap(degree)?;
        let layout = Arc::new(CochainLayout::new(
            self.theory,
            degree,
            self.lie.dim,
            self.module.dim,
        ));
        self.layouts.lock().unwrap().insert(degree, layout.clone());
        Ok(layout)
    }

    fn check_cap(&self, degree: usize) -> Result<(), CochainError> {
        let coords =
            CochainLayout::ambient_count(self.theory, degree, self.lie.dim, self.module.dim);
        if coords > self.cap as u128 {
            return Err(CochainError::DegreeTooLarge {
                degree,
                coords,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Degree-`n` cochain space with its constraint solutions (cached).
    pub fn space(&self, degree: usize) -> Result<Arc<CochainSpace>, CochainError> {
        if let Some(s) = self.spaces.lock().unwrap().get(&degree) {
            return Ok(s.clone());
        }
        let layout = self.layout(degree)?;
        let constraints = self.constraint_rows(&layout);
        let width = layout.ambient_dim();
        let constraint_basis = if constraints.is_empty() {
            Subspace::full(width)
        } else {
            kernel_of_rows(
                width,
                constraints
                    .iter()
                    .map(|r| GF2Vector::from_indices(width, r.iter().copied())),
            )
        };
        let space = Arc::new(CochainSpace {
            layout,
            constraints,
            constraint_basis,
        });
        self.spaces
            .lock()
            .unwrap()
            .insert(degree, space.clone());
        Ok(space)
    }

    /// Constraint equations of the theory in this degree.
    fn constraint_rows(&self, l: &CochainLayout) -> Vec<Vec<usize>> {
        let Some(al) = &self.alinear else {
            return Vec::new();
        };
        let n = l.degree;
        let (d, m) = (l.dim_l, l.dim_m);
        let na = al.base.dim;
        let mut rows = Vec::new();
        let mut terms = Vec::new();
        let push = |terms: &mut Vec<usize>, rows: &mut Vec<Vec<usize>>| {
            normalize(terms);
            if !terms.is_empty() {
                rows.push(std::mem::take(terms));
            }
            terms.clear();
        };
        if n == 0 {
            return rows;
        }
        let rest_tuples = combinations(d, n - 1);
        match self.theory {
            Theory::LR => {
                // φ(a·e_j, Z) = a φ(e_j, Z)
                for a in 0..na {
                    for j in 0..d {
                        let aej: Vec<usize> = al.act[a][j].iter_ones().collect();
                        for z in &rest_tuples {
                            let zs: Vec<[usize; 1]> = z.iter().map(|&k| [k]).collect();
                            for r in 0..m {
                                let ej = [j];
                                let mut args: Vec<&[usize]> = vec![&aej];
                                args.extend(zs.iter().map(|s| s.as_slice()));
                                l.phi_terms(&args, r, &mut terms);
                                args[0] = &ej;
                                for c in al.a_m[a].row(r).iter_ones() {
                                    l.phi_terms(&args, c, &mut terms);
                                }
                                push(&mut terms, &mut rows);
                            }
                        }
                    }
                }
                if l.has_omega() {
                    let z_tuples = combinations(d, n - 2);
                    // ω(a·e_j, Z) = a² ω(e_j, Z)
                    for a in 0..na {
                        for j in 0..d {
                            let aej: Vec<usize> = al.act[a][j].iter_ones().collect();
                            for z in &z_tuples {
                                let zs: Vec<[usize; 1]> = z.iter().map(|&k| [k]).collect();
                                let zr: Vec<&[usize]> = zs.iter().map(|s| s.as_slice()).collect();
                                for r in 0..m {
                                    l.omega_general_terms(&aej, &zr, r, &mut terms);
                                    for c in al.a2_m[a].row(r).iter_ones() {
                                        l.omega_terms(j, &zr, c, &mut terms);
                                    }
                                    push(&mut terms, &mut rows);
                                }
                            }
                        }
                    }
                    // ω(e_i, a·e_j, W) = a ω(e_i, e_j, W)
                    if n >= 3 {
                        let w_tuples = combinations(d, n - 3);
                        for i in 0..d {
                            for a in 0..na {
                                for j in 0..d {
                                    let aej: Vec<usize> = al.act[a][j].iter_ones().collect();
                                    let ej = [j];
                                    for w in &w_tuples {
                                        let ws: Vec<[usize; 1]> =
                                            w.iter().map(|&k| [k]).collect();
                                        for r in 0..m {
                                            let mut zr: Vec<&[usize]> = vec![&aej];
                                            zr.extend(ws.iter().map(|s| s.as_slice()));
                                            l.omega_terms(i, &zr, r, &mut terms);
                                            zr[0] = &ej;
                                            for c in al.a_m[a].row(r).iter_ones() {
                                                l.omega_terms(i, &zr, c, &mut terms);
                                            }
                                            push(&mut terms, &mut rows);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Theory::PA => {
                // φ(e_a e_b, Z) = e_a φ(e_b, Z) + e_b φ(e_a, Z)
                for a in 0..d {
                    for b in a..d {
                        let ab: Vec<usize> = al.act[a][b].iter_ones().collect();
                        let (ea, eb) = ([a], [b]);
                        for z in &rest_tuples {
                            let zs: Vec<[usize; 1]> = z.iter().map(|&k| [k]).collect();
                            for r in 0..m {
                                let mut args: Vec<&[usize]> = vec![&ab];
                                args.extend(zs.iter().map(|s| s.as_slice()));
                                l.phi_terms(&args, r, &mut terms);
                                args[0] = &eb;
                                for c in al.a_m[a].row(r).iter_ones() {
                                    l.phi_terms(&args, c, &mut terms);
                                }
                                args[0] = &ea;
                                for c in al.a_m[b].row(r).iter_ones() {
                                    l.phi_terms(&args, c, &mut terms);
                                }
                                push(&mut terms, &mut rows);
                            }
                        }
                    }
                }
                if l.has_omega() {
                    let z_tuples = combinations(d, n - 2);
                    // ω(e_a e_b, Z) = e_a² ω(e_b, Z) + e_b² ω(e_a, Z) + e_a e_b φ(e_a, e_b, Z)
                    for a in 0..d {
                        for b in a..d {
                            let ab: Vec<usize> = al.act[a][b].iter_ones().collect();
                            let ab_m = al.base.mult_matrix(&al.act[a][b]);
                            let (ea, eb) = ([a], [b]);
                            for z in &z_tuples {
                                let zs: Vec<[usize; 1]> = z.iter().map(|&k| [k]).collect();
                                let zr: Vec<&[usize]> = zs.iter().map(|s| s.as_slice()).collect();
                                for r in 0..m {
                                    l.omega_general_terms(&ab, &zr, r, &mut terms);
                                    for c in al.a2_m[a].row(r).iter_ones() {
                                        l.omega_terms(b, &zr, c, &mut terms);
                                    }
                                    for c in al.a2_m[b].row(r).iter_ones() {
                                        l.omega_terms(a, &zr, c, &mut terms);
                                    }
                                    let mut args: Vec<&[usize]> = vec![&ea, &eb];
                                    args.extend_from_slice(&zr);
                                    for c in ab_m.row(r).iter_ones() {
                                        l.phi_terms(&args, c, &mut terms);
                                    }
                                    push(&mut terms, &mut rows);
                                }
                            }
                        }
                    }
                    // ω(e_i, e_a e_b, W) = e_a ω(e_i, e_b, W) + e_b ω(e_i, e_a, W)
                    if n >= 3 {
                        let w_tuples = combinations(d, n - 3);
                        for i in 0..d {
                            for a in 0..d {
                                for b in a..d {
                                    let ab: Vec<usize> = al.act[a][b].iter_ones().collect();
                                    let (ea, eb) = ([a], [b]);
                                    for w in &w_tuples {
                                        let ws: Vec<[usize; 1]> =
                                            w.iter().map(|&k| [k]).collect();
                                        for r in 0..m {
                                            let mut zr: Vec<&[usize]> = vec![&ab];
                                            zr.extend(ws.iter().map(|s| s.as_slice()));
                                            l.omega_terms(i, &zr, r, &mut terms);
                                            zr[0] = &eb;
                                            for c in al.a_m[a].row(r).iter_ones() {
                                                l.omega_terms(i, &zr, c, &mut terms);
                                            }
                                            zr[0] = &ea;
                                            for c in al.a_m[b].row(r).iter_ones() {
                                                l.omega_terms(i, &zr, c, &mut terms);
                                            }
                                            push(&mut terms, &mut rows);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Theory::CE | Theory::RES => {}
        }
        rows
    }

    /// The coboundary `C^n → C^{n+1}` on ambient coordinates (cached).
    fn sparse_differential(&self, degree: usize) -> Result<Arc<SparseMap>, CochainError> {
        if let Some(m) = self.maps.lock().unwrap().get(&degree) {
            return Ok(m.clone());
        }
        let src = self.layout(degree)?;
        let dst = self.layout(degree + 1)?;
        let map = Arc::new(self.build_differential(&src, &dst));
        self.maps.lock().unwrap().insert(degree, map.clone());
        Ok(map)
    }

    fn build_differential(&self, src: &CochainLayout, dst: &CochainLayout) -> SparseMap {
        let m = src.dim_m;
        let lie = &self.lie;
        let rho = &self.module.rho;
        let supp = |v: &GF2Vector| -> Vec<usize> { v.iter_ones().collect() };
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); src.ambient_dim()];
        let mut terms = Vec::new();
        let emit = |out: usize, terms: &mut Vec<usize>, cols: &mut Vec<Vec<u32>>| {
            normalize(terms);
            for &t in terms.iter() {
                cols[t].push(out as u32);
            }
            terms.clear();
        };
        // d_CE φ(X) = Σ_{a<b} φ([x_a,x_b], X∖{x_a,x_b}) + Σ_a x_a·φ(X∖x_a)
        for (t, x) in dst.phi_index.iter().enumerate() {
            for r in 0..m {
                for a in 0..x.len() {
                    for b in a + 1..x.len() {
                        let br = supp(&lie.bracket[x[a]][x[b]]);
                        let rest: Vec<[usize; 1]> = x
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != a && k != b)
                            .map(|(_, &v)| [v])
                            .collect();
                        let mut args: Vec<&[usize]> = vec![&br];
                        args.extend(rest.iter().map(|s| s.as_slice()));
                        src.phi_terms(&args, r, &mut terms);
                    }
                    let rest: Vec<[usize; 1]> = x
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != a)
                        .map(|(_, &v)| [v])
                        .collect();
                    let args: Vec<&[usize]> = rest.iter().map(|s| s.as_slice()).collect();
                    for c in rho[x[a]].row(r).iter_ones() {
                        src.phi_terms(&args, c, &mut terms);
                    }
                }
                emit(t * m + r, &mut terms, &mut cols);
            }
        }
        if dst.has_omega() {
            let two_map = lie.two_map.as_ref().expect("restricted theories carry a 2-map");
            for &(i, ref z) in &dst.omega_index {
                let xi = [i];
                let sq = supp(&two_map[i]);
                let zs: Vec<[usize; 1]> = z.iter().map(|&k| [k]).collect();
                let zr: Vec<&[usize]> = zs.iter().map(|s| s.as_slice()).collect();
                for r in 0..m {
                    // x·φ(x, Z)
                    let mut args: Vec<&[usize]> = vec![&xi];
                    args.extend_from_slice(&zr);
                    for c in rho[i].row(r).iter_ones() {
                        src.phi_terms(&args, c, &mut terms);
                    }
                    // φ(x^[2], Z)
                    args[0] = &sq;
                    src.phi_terms(&args, r, &mut terms);
                    for k in 0..z.len() {
                        let rest: Vec<&[usize]> = zr
                            .iter()
                            .enumerate()
                            .filter(|&(q, _)| q != k)
                            .map(|(_, s)| *s)
                            .collect();
                        // z_k·ω(x, Z∖z_k)
                        for c in rho[z[k]].row(r).iter_ones() {
                            src.omega_terms(i, &rest, c, &mut terms);
                        }
                        // φ([x,z_k], x, Z∖z_k)
                        let br = supp(&lie.bracket[i][z[k]]);
                        let mut args: Vec<&[usize]> = vec![&br, &xi];
                        args.extend_from_slice(&rest);
                        src.phi_terms(&args, r, &mut terms);
                        // ω(x, [z_k,z_l], Z∖{z_k,z_l})
                        for l in k + 1..z.len() {
                            let bkl = supp(&lie.bracket[z[k]][z[l]]);
                            let mut zargs: Vec<&[usize]> = vec![&bkl];
                            zargs.extend(
                                zr.iter()
                                    .enumerate()
                                    .filter(|&(q, _)| q != k && q != l)
                                    .map(|(_, s)| *s),
                            );
                            src.omega_terms(i, &zargs, r, &mut terms);
                        }
                    }
                    emit(dst.omega_coord(i, z, r), &mut terms, &mut cols);
                }
            }
        }
        SparseMap {
            rows_out: dst.ambient_dim(),
            cols,
        }
    }

    /// `d^n` applied to an ambient coordinate vector.
    pub fn apply_differential(
        &self,
        degree: usize,
        v: &GF2Vector,
    ) -> Result<GF2Vector, CochainError> {
        let map = self.sparse_differential(degree)?;
        if v.len() != map.cols.len() {
            return Err(CochainError::LengthMismatch {
                expected: map.cols.len(),
                got: v.len(),
            });
        }
        Ok(map.apply(v))
    }

    /// Images of the constraint basis of `C^n` in ambient `C^{n+1}`
    /// coordinates, after checking each lands in `C^{n+1}`.
    pub fn differential_images(&self, degree: usize) -> Result<Vec<GF2Vector>, CochainError> {
        let space = self.space(degree)?;
        let map = self.sparse_differential(degree)?;
        let next = self.space_constraints_only(degree + 1)?;
        let mut images = Vec::with_capacity(space.dim());
        for (index, k) in space.constraint_basis.basis().iter().enumerate() {
            let img = map.apply(k);
            if !next.iter().all(|row| !parity(&img, row)) {
                return Err(CochainError::ConstraintViolation { degree, index });
            }
            images.push(img);
        }
        Ok(images)
    }

    /// Matrix of `d^n` from constraint-basis coordinates to ambient
    /// `C^{n+1}` coordinates.
    pub fn differential_matrix(&self, degree: usize) -> Result<GF2Matrix, CochainError> {
        let images = self.differential_images(degree)?;
        let rows = CochainLayout::ambient_count(self.theory, degree + 1, self.lie.dim, self.module.dim)
            as usize;
        Ok(GF2Matrix::from_columns(rows, &images))
    }

    /// Constraint equations without solving them (uses the cache if present).
    fn space_constraints_only(&self, degree: usize) -> Result<Vec<Vec<usize>>, CochainError> {
        if let Some(s) = self.spaces.lock().unwrap().get(&degree) {
            return Ok(s.constraints.clone());
        }
        Ok(self.constraint_rows(&*self.layout(degree)?))
    }

    /// Whether an ambient vector satisfies the degree-`n` constraints.
    pub fn is_cochain(&self, degree: usize, v: &GF2Vector) -> Result<bool, CochainError> {
        let space = self.space(degree)?;
        Ok(v.len() == space.layout.ambient_dim() && space.satisfies_constraints(v))
    }

    /// Cocycles `Z^n` as a subspace of ambient coordinates.
    pub fn cocycles(&self, degree: usize) -> Result<Subspace, CochainError> {
        let space = self.space(degree)?;
        let images = self.differential_images(degree)?;
        let kernel = kernel_of_columns(&images);
        let basis = space.constraint_basis.basis();
        Ok(Subspace::from_spanning(
            space.layout.ambient_dim(),
            kernel.basis().iter().map(|c| {
                let mut v = GF2Vector::zeros(space.layout.ambient_dim());
                for k in c.iter_ones() {
                    v.xor_assign(&basis[k]);
                }
                v
            }),
        ))
    }

    /// Coboundaries `B^n` as a subspace of ambient coordinates.
    pub fn coboundaries(&self, degree: usize) -> Result<Subspace, CochainError> {
        if degree == 0 {
            let width = self.space(0)?.layout.ambient_dim();
            return Ok(Subspace::zero(width));
        }
        let width = self.space(degree)?.layout.ambient_dim();
        Ok(Subspace::from_spanning(width, self.differential_images(degree - 1)?))
    }

    pub fn cohomology(&self, degree: usize) -> Result<CohomologyResult, CochainError> {
        let space = self.space(degree)?;
        let z = self.cocycles(degree)?;
        let b = self.coboundaries(degree)?;
        let q = quotient(&z, &b).expect("coboundaries are cocycles in a complex");
        let representatives = q
            .representatives()
            .iter()
            .map(|v| RestrictedCochain {
                layout: space.layout.clone(),
                coords: v.clone(),
            })
            .collect();
        Ok(CohomologyResult {
            theory: self.theory,
            degree,
            dim_c: space.dim(),
            dim_z: z.dim(),
            dim_b: b.dim(),
            dim_h: q.dim(),
            representatives,
            z,
            b,
        })
    }

    /// A cochain `c ∈ C^{n-1}` with `d c = target`, in ambient coordinates.
    pub fn solve_coboundary(
        &self,
        degree: usize,
        target: &GF2Vector,
    ) -> Result<Option<GF2Vector>, CochainError> {
        if degree == 0 {
            return Ok(if target.is_zero() {
                Some(GF2Vector::zeros(0))
            } else {
                None
            });
        }
        let space = self.space(degree - 1)?;
        let images = self.differential_images(degree - 1)?;
        let rows = self.space(degree)?.layout.ambient_dim();
        if target.len() != rows {
            return Err(CochainError::LengthMismatch {
                expected: rows,
                got: target.len(),
            });
        }
        let m = GF2Matrix::from_columns(rows, &images);
        Ok(m.solve(target).map(|coeffs| space.constraint_basis.combine(&coeffs)))
    }

    pub fn is_coboundary(&self, degree: usize, v: &GF2Vector) -> Result<bool, CochainError> {
        Ok(self.coboundaries(degree)?.contains(v))
    }

    pub fn cochain(&self, degree: usize, coords: GF2Vector) -> Result<RestrictedCochain, CochainError> {
        let layout = self.layout(degree)?;
        if coords.len() != layout.ambient_dim() {
            return Err(CochainError::LengthMismatch {
                expected: layout.ambient_dim(),
                got: coords.len(),
            });
        }
        Ok(RestrictedCochain { layout, coords })
    }
}

/// Kernel of the linear map whose columns are `columns`, in canonical form.
pub fn kernel_of_columns(columns: &[GF2Vector]) -> Subspace {
    let k = columns.len();
    let h = columns.first().map_or(0, |c| c.len());
    let mut echelon = Echelon::new(h + k);
    for (i, c) in columns.iter().enumerate() {
        let mut v = GF2Vector::zeros(h + k);
        v.xor_at(0, c);
        v.set(h + i, true);
        echelon.insert(v);
    }
    let rows = echelon.into_subspace();
    Subspace::from_spanning(
        k,
        rows.basis()
            .iter()
            .filter(|r| r.lowest_one().is_some_and(|p| p >= h))
            .map(|r| r.slice(h, k)),
    )
}

/// Convenience wrapper: cohomology of an algebra (adjoint coefficients).
pub fn cohomology(
    alg: &AlgebraPresentation,
    theory: Theory,
    degree: usize,
) -> Result<CohomologyResult, CochainError> {
    CochainComplex::for_algebra(alg, theory)?.cohomology(degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> AlgebraPresentation {
        let mut p = AlgebraPresentation::new(3);
        p.set_bracket(0, 1, p.basis(2));
        p.ensure_two_map();
        p.set_product(0, 1, p.basis(2));
        p
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for n in 0..6 {
            for k in 0..=n {
                let l = CochainLayout::new(Theory::CE, k, n, 1);
                for (r, t) in l.phi_index.iter().enumerate() {
                    assert_eq!(l.rank(t), r);
                }
            }
        }
    }

    #[test]
    fn restricted_degree_two_is_unconstrained() {
        let p = h3();
        let c = CochainComplex::for_algebra(&p, Theory::RES).unwrap();
        let s = c.space(2).unwrap();
        assert_eq!(s.layout.ambient_dim(), 3 * (3 + 3));
        assert_eq!(s.dim(), 18);
    }

    #[test]
    fn degree_zero_differential_of_center_vanishes() {
        let p = h3();
        let c = CochainComplex::for_algebra(&p, Theory::CE).unwrap();
        let out = c.apply_differential(0, &p.basis(2)).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn sum_rule_evaluation() {
        let p = h3();
        let c = CochainComplex::for_algebra(&p, Theory::RES).unwrap();
        let mut co = RestrictedCochain::zero(c.layout(2).unwrap());
        co.set_phi(&[0, 1], &p.basis(0));
        co.set_omega(0, &[], &p.basis(2));
        co.set_omega(1, &[], &p.basis(2));
        let v = co.eval_omega(&p.elem(&[0, 1]), &[]).unwrap();
        assert_eq!(v, p.basis(0));
        let same = co.eval_phi(&[p.basis(0), p.basis(0)]).unwrap();
        assert!(same.is_zero());
        assert_eq!(
            co.eval_phi(&[p.basis(0)]).unwrap_err(),
            CochainError::ArityMismatch { expected: 2, got: 1 }
        );
    }

    #[test]
    fn cap_is_enforced() {
        let p = h3();
        let c = CochainComplex::for_algebra(&p, Theory::CE).unwrap().with_cap(5);
        assert!(matches!(
            c.space(1),
            Err(CochainError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn kernel_of_columns_small() {
        let cols = [
            GF2Vector::parse_bits("11").unwrap(),
            GF2Vector::parse_bits("11").unwrap(),
        ];
        let k = kernel_of_columns(&cols);
        assert_eq!(k.basis(), &[GF2Vector::parse_bits("11").unwrap()]);
    }
}
