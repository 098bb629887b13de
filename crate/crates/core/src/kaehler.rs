//! Kähler differentials `Ω¹(A) = I/I²`, the restricted Lie–Rinehart algebra
//! `(A, Ω¹(A), π♯)` of a restricted Poisson algebra, and the cochain map
//! `(φ, ω) ↦ (φ̂, ŵ)` from Poisson to Lie–Rinehart cochains.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    two_map_lie_rinehart, verify_commutative_associative, verify_lie_rinehart,
    verify_restricted_poisson, AlgebraError, AlgebraPresentation, LieRinehartPresentation,
    ModulePresentation, VerificationReport, Violation,
};
use crate::cochains::{CochainComplex, CochainError, CochainLayout, RestrictedCochain, Theory};
use crate::gf2::{quotient, Echelon, GF2Matrix, GF2Vector, Quotient, Subspace};

pub const DEFAULT_NODE_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KaehlerError {
    #[error("the algebra has no unit")]
    NotUnital,
    #[error("the algebra has no product table")]
    MissingProduct,
    #[error("the product is not commutative and associative: {0}")]
    NotCommutative(Violation),
    #[error("not a restricted Poisson algebra: {0}")]
    NotPoisson(Violation),
    #[error("no free A-basis of Ω¹(A) is known")]
    NotFree,
    #[error("the induced Lie–Rinehart structure fails verification: {0}")]
    InvalidStructure(Violation),
    #[error("the comparison map is not a bijection in degree {0}")]
    NotBijective(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// `Ω¹(A)` in coordinates of a canonical basis of `I/I²`.
#[derive(Debug, Clone)]
pub struct KaehlerModule {
    pub base: AlgebraPresentation,
    /// `I = ker(A⊗A → A)`, with `e_i⊗e_j` at index `i*dim A + j`.
    pub ideal: Subspace,
    pub ideal_square: Subspace,
    pub quotient: Quotient,
    pub dim: usize,
    /// Column `u` is `d(e_u)`.
    pub d_map: GF2Matrix,
    /// `a_action[a]` is multiplication by `e_a` on `Ω¹(A)`.
    pub a_action: Vec<GF2Matrix>,
    pub free_basis: Option<Vec<GF2Vector>>,
}

fn tensor_product(base: &AlgebraPresentation, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
    let d = base.dim;
    let mut out = GF2Vector::zeros(d * d);
    for p in x.iter_ones() {
        let (i, j) = (p / d, p % d);
        for q in y.iter_ones() {
            let (k, l) = (q / d, q % d);
            let left = base.product(&base.basis(i), &base.basis(k));
            let right = base.product(&base.basis(j), &base.basis(l));
            for a in left.iter_ones() {
                for b in right.iter_ones() {
                    out.flip(a * d + b);
                }
            }
        }
    }
    out
}

/// Builds `Ω¹(A)` for a unital commutative associative `A`.
pub fn kaehler_module(base: &AlgebraPresentation) -> Result<KaehlerModule, KaehlerError> {
    if !base.has_product() {
        return Err(KaehlerError::MissingProduct);
    }
    let unit = base.unit.clone().ok_or(KaehlerError::NotUnital)?;
    if let Some(v) = verify_commutative_associative(base)?.violation {
        return Err(KaehlerError::NotCommutative(v));
    }
    let d = base.dim;
    let mult_cols: Vec<GF2Vector> = (0..d * d)
        .map(|p| base.product(&base.basis(p / d), &base.basis(p % d)))
        .collect();
    let ideal = GF2Matrix::from_columns(d, &mult_cols).kernel_basis();
    let mut square = Echelon::new(d * d);
    let gens = ideal.basis();
    for (k, x) in gens.iter().enumerate() {
        for y in &gens[k..] {
            square.insert(tensor_product(base, x, y));
        }
    }
    let ideal_square = square.into_subspace();
    let quotient = quotient(&ideal, &ideal_square).expect("I² ⊆ I");
    let dim = quotient.dim();

    let mut d_cols = Vec::with_capacity(d);
    for u in 0..d {
        let mut t = GF2Vector::zeros(d * d);
        for k in unit.iter_ones() {
            t.flip(u * d + k);
            t.flip(k * d + u);
        }
        d_cols.push(quotient.class_coordinates(&t));
    }
    let d_map = GF2Matrix::from_columns(dim, &d_cols);
    let a_action = (0..d)
        .map(|a| {
            let cols: Vec<GF2Vector> = quotient
                .representatives()
                .iter()
                .map(|r| {
                    let mut t = GF2Vector::zeros(d * d);
                    for p in r.iter_ones() {
                        let ax = base.product(&base.basis(a), &base.basis(p / d));
                        for i in ax.iter_ones() {
                            t.flip(i * d + p % d);
                        }
                    }
                    quotient.class_coordinates(&t)
                })
                .collect();
            GF2Matrix::from_columns(dim, &cols)
        })
        .collect();
    Ok(KaehlerModule {
        base: base.clone(),
        ideal,
        ideal_square,
        quotient,
        dim,
        d_map,
        a_action,
        free_basis: None,
    })
}

impl KaehlerModule {
    /// `d(u)` for `u ∈ A`.
    pub fn d(&self, u: &GF2Vector) -> GF2Vector {
        self.d_map.mul_vec(u)
    }

    /// `a·w` for `a ∈ A`, `w ∈ Ω¹(A)`.
    pub fn act(&self, a: &GF2Vector, w: &GF2Vector) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.dim);
        for k in a.iter_ones() {
            out += &self.a_action[k].mul_vec(w);
        }
        out
    }

    /// `x·du`.
    pub fn x_du(&self, x: &GF2Vector, u: &GF2Vector) -> GF2Vector {
        self.act(x, &self.d(u))
    }

    /// Matrix of `A^r → Ω¹(A)`, `(a_k) ↦ Σ a_k w_k`.
    pub fn span_matrix(&self, elements: &[GF2Vector]) -> GF2Matrix {
        let n = self.base.dim;
        let cols: Vec<GF2Vector> = elements
            .iter()
            .flat_map(|w| (0..n).map(move |a| self.a_action[a].mul_vec(w)))
            .collect();
        GF2Matrix::from_columns(self.dim, &cols)
    }

    pub fn is_free_basis(&self, elements: &[GF2Vector]) -> bool {
        elements.len() * self.base.dim == self.dim
            && self.span_matrix(elements).rank() == self.dim
    }

    /// Generators `e_x de_u` as `(x, u)` whose sum is `w`.
    pub fn preimage(&self, w: &GF2Vector) -> Vec<(usize, usize)> {
        let n = self.base.dim;
        let cols: Vec<GF2Vector> = (0..n * n)
            .map(|p| self.x_du(&self.base.basis(p / n), &self.base.basis(p % n)))
            .collect();
        let sol = GF2Matrix::from_columns(self.dim, &cols)
            .solve(w)
            .expect("the x du span Ω¹(A)");
        sol.iter_ones().map(|p| (p / n, p % n)).collect()
    }

    /// Human-readable name such as `x dy + dz`.
    pub fn format_elem(&self, w: &GF2Vector) -> String {
        if w.is_zero() {
            return "0".into();
        }
        let unit = self.base.unit.clone();
        self.preimage(w)
            .into_iter()
            .map(|(x, u)| {
                let du = format!("d{}", self.base.basis_names[u]);
                if unit.as_ref() == Some(&self.base.basis(x)) {
                    du
                } else {
                    format!("{} {du}", self.base.basis_names[x])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Outcome of the bounded search for a free `A`-basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeBasisSearch {
    Found(Vec<GF2Vector>),
    /// `dim Ω¹` is not `r·dim A` for any `r ≤ max_rank`: no free basis of
    /// admissible rank exists.
    RankImpossible { dim: usize, base_dim: usize },
    /// Every candidate tuple was examined without success.
    NotFound { nodes: usize },
    /// The node budget ran out.
    Inconclusive { nodes: usize },
}

impl FreeBasisSearch {
    pub fn basis(&self) -> Option<&[GF2Vector]> {
        match self {
            FreeBasisSearch::Found(b) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for FreeBasisSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeBasisSearch::Found(b) => write!(f, "free of rank {}", b.len()),
            FreeBasisSearch::RankImpossible { dim, base_dim } => write!(
                f,
                "not free of admissible rank: dim Ω¹ = {dim} is not a multiple of dim A = {base_dim} within the rank bound"
            ),
            FreeBasisSearch::NotFound { nodes } => write!(
                f,
                "no free basis among the searched candidates ({nodes} nodes); this does not prove non-freeness"
            ),
            FreeBasisSearch::Inconclusive { nodes } => {
                write!(f, "inconclusive: node budget exhausted after {nodes} nodes")
            }
        }
    }
}

/// Largest `dim Ω¹` for which every element is enumerated as a candidate.
const FULL_POOL_DIM: usize = 24;

/// Depth-first search for an `A`-basis of `Ω¹(A)` of rank at most
/// `max_rank`. Candidates are the `d(e_u)` first, then every other nonzero
/// element in increasing coordinate order (only the `e_x de_u` when
/// `dim Ω¹` is large). The first basis in candidate order is returned.
pub fn find_free_basis(k: &KaehlerModule, max_rank: usize, budget: usize) -> FreeBasisSearch {
    let n = k.base.dim;
    if k.dim == 0 {
        return FreeBasisSearch::Found(Vec::new());
    }
    if k.dim % n != 0 || k.dim / n > max_rank {
        return FreeBasisSearch::RankImpossible {
            dim: k.dim,
            base_dim: n,
        };
    }
    let rank = k.dim / n;
    let mut pool: Vec<GF2Vector> = Vec::new();
    let push = |v: GF2Vector, pool: &mut Vec<GF2Vector>| {
        if !v.is_zero() && !pool.contains(&v) {
            pool.push(v);
        }
    };
    for u in 0..n {
        push(k.d(&k.base.basis(u)), &mut pool);
    }
    if k.dim <= FULL_POOL_DIM {
        for m in 1u64..1 << k.dim {
            push(GF2Vector::from_mask(k.dim, m), &mut pool);
        }
    } else {
        for x in 0..n {
            for u in 0..n {
                push(k.x_du(&k.base.basis(x), &k.base.basis(u)), &mut pool);
            }
        }
    }
    let orbits: Vec<Vec<GF2Vector>> = pool
        .iter()
        .map(|w| (0..n).map(|a| k.a_action[a].mul_vec(w)).collect())
        .collect();

    struct Dfs<'a> {
        orbits: &'a [Vec<GF2Vector>],
        rank: usize,
        budget: usize,
        nodes: usize,
        chosen: Vec<usize>,
    }
    impl Dfs<'_> {
        /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
        fn go(&mut self, start: usize, span: &Echelon) -> Option<bool> {
            if self.chosen.len() == self.rank {
                return Some(true);
            }
            for c in start..self.orbits.len() {
                if self.nodes >= self.budget {
                    return None;
                }
                self.nodes += 1;
                let mut next = span.clone();
                if self.orbits[c].iter().all(|v| next.insert(v.clone())) {
                    self.chosen.push(c);
                    match self.go(c + 1, &next) {
                        Some(true) => return Some(true),
                        None => return None,
                        Some(false) => {
                            self.chosen.pop();
                        }
                    }
                }
            }
            Some(false)
        }
    }
    let mut dfs = Dfs {
        orbits: &orbits,
        rank,
        budget,
        nodes: 0,
        chosen: Vec::new(),
    };
    match dfs.go(0, &Echelon::new(k.dim)) {
        Some(true) => FreeBasisSearch::Found(dfs.chosen.iter().map(|&c| pool[c].clone()).collect()),
        Some(false) => FreeBasisSearch::NotFound { nodes: dfs.nodes },
        None => FreeBasisSearch::Inconclusive { nodes: dfs.nodes },
    }
}

/// Generator-level formulas of the induced structure.
struct Formulas<'a> {
    p: &'a AlgebraPresentation,
    k: &'a KaehlerModule,
}

impl Formulas<'_> {
    fn e(&self, i: usize) -> GF2Vector {
        self.p.basis(i)
    }

    /// `a·dv` for `a, v ∈ A`.
    fn a_dv(&self, a: &GF2Vector, v: &GF2Vector) -> GF2Vector {
        self.k.x_du(a, v)
    }

    /// `[x du, y dv] = x{u,y}dv + y{x,v}du + xy d{u,v}`.
    fn bracket(&self, (x, u): (usize, usize), (y, v): (usize, usize)) -> GF2Vector {
        let p = self.p;
        let (x, u, y, v) = (self.e(x), self.e(u), self.e(y), self.e(v));
        let mut out = self.a_dv(&p.product(&x, &p.bracket(&u, &y)), &v);
        out += &self.a_dv(&p.product(&y, &p.bracket(&x, &v)), &u);
        out += &self.a_dv(&p.product(&x, &y), &p.bracket(&u, &v));
        out
    }

    /// `(x du)^[2] = x² d(u^{2}) + x{u,x} du`.
    fn square(&self, (x, u): (usize, usize)) -> GF2Vector {
        let p = self.p;
        let (x, u) = (self.e(x), self.e(u));
        let mut out = self.a_dv(&p.square(&x), &p.two_map(&u));
        out += &self.a_dv(&p.product(&x, &p.bracket(&u, &x)), &u);
        out
    }

    /// `π♯(x du) = x{u,-}` as a matrix on `A`.
    fn anchor(&self, (x, u): (usize, usize)) -> GF2Matrix {
        let p = self.p;
        let (x, u) = (self.e(x), self.e(u));
        let cols: Vec<GF2Vector> = (0..p.dim)
            .map(|a| p.product(&x, &p.bracket(&u, &self.e(a))))
            .collect();
        GF2Matrix::from_columns(p.dim, &cols)
    }

    fn bracket_sum(&self, g: &[(usize, usize)], h: &[(usize, usize)]) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.k.dim);
        for &a in g {
            for &b in h {
                out += &self.bracket(a, b);
            }
        }
        out
    }

    /// 2-map of `Σ g` through the sum rule.
    fn square_sum(&self, g: &[(usize, usize)]) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.k.dim);
        for (i, &a) in g.iter().enumerate() {
            out += &self.square(a);
            for &b in &g[i + 1..] {
                out += &self.bracket(a, b);
            }
        }
        out
    }
}

/// `(A, Ω¹(A), π♯)` for a restricted Poisson algebra with a known free basis
/// of `Ω¹(A)`. `L` has the coordinate basis of `Ω¹(A)`.
pub fn induced_lie_rinehart(
    p: &AlgebraPresentation,
    k: &KaehlerModule,
) -> Result<LieRinehartPresentation, KaehlerError> {
    let free = k.free_basis.as_ref().ok_or(KaehlerError::NotFree)?;
    if let Some(v) = verify_restricted_poisson(p)?.violation {
        return Err(KaehlerError::NotPoisson(v));
    }
    let f = Formulas { p, k };
    let n = k.dim;
    let pre: Vec<Vec<(usize, usize)>> = (0..n).map(|i| k.preimage(&GF2Vector::unit(n, i))).collect();
    let names = (0..n)
        .map(|i| k.format_elem(&GF2Vector::unit(n, i)))
        .collect();
    let mut lie = AlgebraPresentation::with_names(names);
    for i in 0..n {
        for j in i + 1..n {
            lie.set_bracket(i, j, f.bracket_sum(&pre[i], &pre[j]));
        }
    }
    lie.ensure_two_map();
    let anchor = pre
        .iter()
        .map(|g| {
            g.iter()
                .fold(GF2Matrix::zeros(p.dim, p.dim), |m, &t| m.add(&f.anchor(t)))
        })
        .collect();
    let action = (0..p.dim)
        .map(|a| (0..n).map(|j| k.a_action[a].column(j)).collect())
        .collect();
    let mut base = k.base.clone();
    base.bracket = vec![vec![GF2Vector::zeros(base.dim); base.dim]; base.dim];
    base.two_map = None;
    let lr = LieRinehartPresentation {
        base,
        lie,
        action,
        anchor,
    };
    let squares: Vec<GF2Vector> = free.iter().map(|w| f.square_sum(&k.preimage(w))).collect();
    let lr = two_map_lie_rinehart(&lr, free, &squares)?;
    if let Some(v) = verify_lie_rinehart(&lr)?.violation {
        return Err(KaehlerError::InvalidStructure(v));
    }
    Ok(lr)
}

/// `(x du)^[2]` through the sum rule over a generator decomposition, for
/// checking the 2-map table independently of the free-basis extension.
pub fn generator_square(p: &AlgebraPresentation, k: &KaehlerModule, w: &GF2Vector) -> GF2Vector {
    Formulas { p, k }.square_sum(&k.preimage(w))
}

/// The linear map `(φ, ω) ↦ (φ̂, ŵ)` in one degree.
#[derive(Debug, Clone)]
pub struct ComparisonMap {
    pub degree: usize,
    pub source: Arc<CochainLayout>,
    pub target: Arc<CochainLayout>,
    /// `target.ambient_dim() × source.ambient_dim()`.
    pub matrix: GF2Matrix,
}

impl ComparisonMap {
    pub fn apply(&self, v: &GF2Vector) -> GF2Vector {
        self.matrix.mul_vec(v)
    }
}

/// Evaluation of `φ̂`, `ŵ` on coordinate tuples of `Ω¹(A)`.
struct Hat<'a> {
    base: &'a AlgebraPresentation,
    pre: &'a [Vec<(usize, usize)>],
    f: &'a RestrictedCochain,
}

impl Hat<'_> {
    /// Visits every choice of one generator per argument with the product
    /// of the chosen coefficients and the chosen `u`'s.
    fn expand(
        &self,
        args: &[usize],
        coeff: GF2Vector,
        us: &mut Vec<GF2Vector>,
        visit: &mut dyn FnMut(&GF2Vector, &[GF2Vector]),
    ) {
        let Some((&first, rest)) = args.split_first() else {
            visit(&coeff, us);
            return;
        };
        for &(x, u) in &self.pre[first] {
            let c = self.base.product(&coeff, &self.base.basis(x));
            if c.is_zero() {
                continue;
            }
            us.push(self.base.basis(u));
            self.expand(rest, c, us, visit);
            us.pop();
        }
    }

    fn one(&self) -> GF2Vector {
        self.base.unit.clone().expect("unital")
    }

    /// `φ̂(w_{t_1}, …, w_{t_n}) = Σ x_1⋯x_n φ(u_1, …, u_n)`.
    fn phi(&self, tuple: &[usize]) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.base.dim);
        self.expand(tuple, self.one(), &mut Vec::new(), &mut |c, us| {
            let v = self.f.eval_phi(us).expect("arity");
            out += &self.base.product(c, &v);
        });
        out
    }

    /// `ŵ(w_i, w_Z)`: `x² Πy ω(u, v…)` on generators, sum rule in the first
    /// argument.
    fn omega(&self, i: usize, z: &[usize]) -> GF2Vector {
        let b = self.base;
        let mut out = GF2Vector::zeros(b.dim);
        let gens = &self.pre[i];
        for (k, &(x, u)) in gens.iter().enumerate() {
            let x2 = b.square(&b.basis(x));
            if !x2.is_zero() {
                self.expand(z, self.one(), &mut Vec::new(), &mut |c, vs| {
                    let v = self.f.eval_omega(&b.basis(u), vs).expect("arity");
                    out += &b.product(&b.product(&x2, c), &v);
                });
            }
            for &(y, v) in &gens[k + 1..] {
                let xy = b.product(&b.basis(x), &b.basis(y));
                if xy.is_zero() {
                    continue;
                }
                self.expand(z, xy, &mut vec![b.basis(u), b.basis(v)], &mut |c, us| {
                    let val = self.f.eval_phi(us).expect("arity");
                    out += &b.product(c, &val);
                });
            }
        }
        out
    }
}

/// Matrix of `Φ` from `C^n_PA(A)` (ambient coordinates) to the ambient
/// coordinates of `C^n_LR(Ω¹(A); A)`.
pub fn comparison_map(
    pa: &CochainComplex,
    lr: &CochainComplex,
    k: &KaehlerModule,
    degree: usize,
) -> Result<ComparisonMap, KaehlerError> {
    if k.free_basis.is_none() {
        return Err(KaehlerError::NotFree);
    }
    if pa.theory() != Theory::PA {
        return Err(CochainError::TheoryMismatch {
            expected: Theory::PA,
            got: pa.theory(),
        }
        .into());
    }
    if lr.theory() != Theory::LR {
        return Err(CochainError::TheoryMismatch {
            expected: Theory::LR,
            got: lr.theory(),
        }
        .into());
    }
    let source = pa.layout(degree)?;
    let target = lr.layout(degree)?;
    let pre: Vec<Vec<(usize, usize)>> = (0..k.dim)
        .map(|i| k.preimage(&GF2Vector::unit(k.dim, i)))
        .collect();
    let base = &k.base;
    let mut cols = Vec::with_capacity(source.ambient_dim());
    for s in 0..source.ambient_dim() {
        let f = RestrictedCochain {
            layout: source.clone(),
            coords: GF2Vector::unit(source.ambient_dim(), s),
        };
        let hat = Hat {
            base,
            pre: &pre,
            f: &f,
        };
        let mut col = GF2Vector::zeros(target.ambient_dim());
        if degree == 0 {
            col.xor_at(0, &f.coords);
        }
        if degree >= 1 {
            for t in &target.phi_index {
                for c in hat.phi(t).iter_ones() {
                    col.flip(target.phi_coord(t, c));
                }
            }
        }
        for (i, z) in &target.omega_index {
            for c in hat.omega(*i, z).iter_ones() {
                col.flip(target.omega_coord(*i, z, c));
            }
        }
        cols.push(col);
    }
    let matrix = GF2Matrix::from_columns(target.ambient_dim(), &cols);
    Ok(ComparisonMap {
        degree,
        source,
        target,
        matrix,
    })
}

/// Per-degree outcome of [`verify_chain_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    /// `Φ` maps `C^n_PA` bijectively onto `C^n_LR`.
    pub bijective: bool,
    pub dim_c_pa: usize,
    pub dim_c_lr: usize,
    pub dim_h_pa: usize,
    pub dim_h_lr: usize,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// First failure of `Φ∘d_PA = d_LR∘Φ`; witness `[degree, basis index]`.
    pub report: VerificationReport,
    pub degrees: Vec<DegreeComparison>,
}

pub const CHAIN_MAP_IDENTITY: &str = "Φ∘d_PA = d_LR∘Φ";

/// Everything needed to compare the two complexes of `p`.
pub struct Comparison {
    pub kaehler: KaehlerModule,
    pub lie_rinehart: LieRinehartPresentation,
    pub pa: CochainComplex,
    pub lr: CochainComplex,
}

impl Comparison {
    /// Builds `Ω¹(A)`, searches a free basis and sets up both complexes.
    pub fn new(p: &AlgebraPresentation, budget: usize) -> Result<Self, KaehlerError> {
        let mut kaehler = kaehler_module(p)?;
        kaehler.free_basis = find_free_basis(&kaehler, p.dim, budget).basis().map(<[_]>::to_vec);
        let lie_rinehart = induced_lie_rinehart(p, &kaehler)?;
        let module = ModulePresentation::base(&lie_rinehart);
        let lr = CochainComplex::lie_rinehart(&lie_rinehart, &module)?;
        let pa = CochainComplex::poisson(p)?;
        Ok(Self {
            kaehler,
            lie_rinehart,
            pa,
            lr,
        })
    }

    pub fn map(&self, degree: usize) -> Result<ComparisonMap, KaehlerError> {
        comparison_map(&self.pa, &self.lr, &self.kaehler, degree)
    }

    /// Checks bijectivity of `Φ` on constrained cochains and
    /// `Φ_{n+1}∘d^n_PA = d^n_LR∘Φ_n` for each `n` in `degrees`.
    pub fn verify(&self, degrees: std::ops::RangeInclusive<usize>) -> Result<ComparisonReport, KaehlerError> {
        let mut out = Vec::new();
        let mut violation = None;
        for n in degrees {
            let phi_n = self.map(n)?;
            let phi_next = self.map(n + 1)?;
            let pa_space = self.pa.space(n)?;
            let lr_space = self.lr.space(n)?;
            let images: Vec<GF2Vector> = pa_space
                .constraint_basis
                .basis()
                .iter()
                .map(|v| phi_n.apply(v))
                .collect();
            let image = Subspace::from_spanning(phi_n.target.ambient_dim(), images.iter().cloned());
            let bijective = image.dim() == pa_space.dim()
                && image.dim() == lr_space.dim()
                && image.is_subspace_of(&lr_space.constraint_basis);
            if violation.is_none() {
                for (idx, (v, w)) in pa_space.constraint_basis.basis().iter().zip(&images).enumerate() {
                    let lhs = phi_next.apply(&self.pa.apply_differential(n, v)?);
                    let rhs = self.lr.apply_differential(n, w)?;
                    if lhs != rhs {
                        violation = Some(Violation {
                            identity: CHAIN_MAP_IDENTITY.into(),
                            witness: vec![n, idx],
                            lhs,
                            rhs,
                        });
                        break;
                    }
                }
            }
            out.push(DegreeComparison {
                degree: n,
                bijective,
                dim_c_pa: pa_space.dim(),
                dim_c_lr: lr_space.dim(),
                dim_h_pa: self.pa.cohomology(n)?.dim_h,
                dim_h_lr: self.lr.cohomology(n)?.dim_h,
            });
        }
        Ok(ComparisonReport {
            report: VerificationReport { violation },
            degrees: out,
        })
    }
}

/// `Φ∘d_PA = d_LR∘Φ` on `degrees`, plus cohomology dimensions of both sides.
pub fn verify_chain_map(
    p: &AlgebraPresentation,
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<ComparisonReport, KaehlerError> {
    Comparison::new(p, DEFAULT_NODE_BUDGET)?.verify(degrees)
}
