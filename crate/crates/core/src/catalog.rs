//! Built-in example algebras.

use std::collections::BTreeSet;

use crate::algebra::{
    derivation_lie_rinehart, AlgebraPresentation, LieRinehartPresentation, ModulePresentation,
};
use crate::cochains::Theory;
use crate::gf2::{GF2Matrix, GF2Vector};

/// 3-dim Heisenberg algebra: `[e1,e2] = e3`, zero 2-map, `e1 e2 = e3`.
pub fn heisenberg3() -> AlgebraPresentation {
    let mut p = AlgebraPresentation::new(3);
    p.set_bracket(0, 1, p.basis(2));
    p.ensure_two_map();
    p.set_product(0, 1, p.basis(2));
    p
}

fn rigid_lie() -> AlgebraPresentation {
    let mut p = AlgebraPresentation::new(3);
    p.set_bracket(1, 2, p.basis(1));
    p.ensure_two_map();
    p.set_two_map(2, p.basis(2));
    p
}

/// `[e2,e3] = e2`, `e3^[2] = e3`, product `e1 e1 = e1`.
pub fn rigid3() -> AlgebraPresentation {
    let mut p = rigid_lie();
    p.set_product(0, 0, p.basis(0));
    p
}

/// Same restricted Lie algebra as [`rigid3`], with `e1` a unit.
pub fn nonrigid3() -> AlgebraPresentation {
    let mut p = rigid_lie();
    for i in 0..3 {
        p.set_product(0, i, p.basis(i));
    }
    p.unit = Some(p.basis(0));
    p
}

/// Divided powers `x^(i)` with `0 ≤ i_s < 2^{n_s}`; basis in lexicographic
/// order of exponent vectors. Zero bracket and zero 2-map.
pub fn divided_powers(exponents: &[u32]) -> AlgebraPresentation {
    let radices: Vec<usize> = exponents.iter().map(|&n| 1usize << n).collect();
    let dim: usize = radices.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut e = vec![0; radices.len()];
        for s in (0..radices.len()).rev() {
            e[s] = idx % radices[s];
            idx /= radices[s];
        }
        e
    };
    let encode = |e: &[usize]| e.iter().zip(&radices).fold(0, |acc, (&v, &r)| acc * r + v);
    let names = (0..dim)
        .map(|idx| {
            let e = decode(idx);
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(s, &v)| {
                    if radices.len() == 1 {
                        format!("x^({v})")
                    } else {
                        format!("x{}^({v})", s + 1)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut p = AlgebraPresentation::with_names(names);
    p.ensure_product();
    p.ensure_two_map();
    for a in 0..dim {
        for b in a..dim {
            let (ea, eb) = (decode(a), decode(b));
            // Lucas: C(i+j, i) is odd iff i AND j = 0.
            if ea.iter().zip(&eb).all(|(x, y)| x & y == 0) {
                let sum: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x | y).collect();
                p.set_product(a, b, p.basis(encode(&sum)));
            }
        }
    }
    p.unit = Some(p.basis(0));
    p
}

/// `∂/∂x_s` on divided powers: `x^(i) ↦ x^(i - e_s)`.
pub fn divided_power_partial(exponents: &[u32], s: usize) -> GF2Matrix {
    let radices: Vec<usize> = exponents.iter().map(|&n| 1usize << n).collect();
    let dim: usize = radices.iter().product();
    let stride: usize = radices[s + 1..].iter().product();
    let mut m = GF2Matrix::zeros(dim, dim);
    for idx in 0..dim {
        if (idx / stride) % radices[s] > 0 {
            m.set(idx - stride, idx, true);
        }
    }
    m
}

/// `GF(2)[x]/(x^2)` with zero Poisson structure.
pub fn dual_numbers() -> AlgebraPresentation {
    let mut p = divided_powers(&[1]);
    p.basis_names = vec!["1".into(), "x".into()];
    p
}

/// Monomial basis of `po_Π(2n, 1)`: subsets of `{p1..pn, q1..qn}` as
/// bitmasks (bit `i` = `p_{i+1}`, bit `n+i` = `q_{i+1}`), ordered by degree
/// then lexicographically.
pub fn po_pi_monomials(n: usize) -> Vec<u64> {
    monomials(2 * n)
}

fn monomial_name(n: usize, mask: u64) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    (0..2 * n)
        .filter(|&b| mask >> b & 1 == 1)
        .map(|b| {
            if b < n {
                format!("p{}", b + 1)
            } else {
                format!("q{}", b - n + 1)
            }
        })
        .collect()
}

/// `po_Π(2n, 1)`: divided-power product, bracket
/// `{f,g} = Σ ∂_{p_i}f ∂_{q_i}g + ∂_{q_i}f ∂_{p_i}g`, and 2-map
/// `(p_i q_i)^[2] = p_i q_i` plus a constant `1` on every monomial listed in
/// `constants` (mask `0` is the constant of `1^[2]`).
pub fn po_pi(n: usize, constants: &[u64]) -> AlgebraPresentation {
    let masks = po_pi_monomials(n);
    let dim = masks.len();
    let index_of = |m: u64| masks.iter().position(|&x| x == m).expect("monomial");
    let names = masks.iter().map(|&m| monomial_name(n, m)).collect();
    let mut p = AlgebraPresentation::with_names(names);
    p.ensure_product();
    p.ensure_two_map();
    let partial = |m: u64, bit: usize| -> Option<u64> { (m >> bit & 1 == 1).then(|| m & !(1 << bit)) };
    let mul = |a: u64, b: u64| -> Option<u64> { (a & b == 0).then_some(a | b) };
    for a in 0..dim {
        for b in a..dim {
            let (ma, mb) = (masks[a], masks[b]);
            if let Some(m) = mul(ma, mb) {
                p.set_product(a, b, p.basis(index_of(m)));
            }
            let mut v = GF2Vector::zeros(dim);
            for i in 0..n {
                for (x, y) in [(i, n + i), (n + i, i)] {
                    if let (Some(fa), Some(gb)) = (partial(ma, x), partial(mb, y)) {
                        if let Some(m) = mul(fa, gb) {
                            v.flip(index_of(m));
                        }
                    }
                }
            }
            p.set_bracket(a, b, v);
        }
    }
    let set: BTreeSet<u64> = constants.iter().copied().collect();
    for (k, &m) in masks.iter().enumerate() {
        let mut v = GF2Vector::zeros(dim);
        if m.count_ones() == 2 && (0..n).any(|i| m == (1 << i) | (1 << (n + i))) {
            v.flip(k);
        }
        if set.contains(&m) {
            v.flip(0);
        }
        p.set_two_map(k, v);
    }
    p.unit = Some(p.basis(0));
    p
}

fn subsets_presentation(n: usize, include_one: bool) -> (AlgebraPresentation, Vec<u64>) {
    let masks: Vec<u64> = monomials(n)
        .into_iter()
        .filter(|&m| include_one || m != 0)
        .collect();
    let names = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "1".to_string()
            } else {
                (0..n)
                    .filter(|&b| m >> b & 1 == 1)
                    .map(|b| format!("z{}", b + 1))
                    .collect()
            }
        })
        .collect();
    (AlgebraPresentation::with_names(names), masks)
}

/// Subsets of `vars` variables ordered by size, then lexicographically.
fn monomials(vars: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << vars).collect();
    masks.sort_by_key(|m| {
        let idx: Vec<u32> = (0..vars as u32).filter(|&b| m >> b & 1 == 1).collect();
        (m.count_ones(), idx)
    });
    masks
}

/// `{f,g} = Σ ∂_{z_i}f ∂_{z_i}g` on truncated divided powers in `n`
/// variables; entries landing on `1` are kept (`po_I`) or dropped (`h_I`).
fn po_i_bracket(n: usize, include_one: bool) -> AlgebraPresentation {
    let (mut p, masks) = subsets_presentation(n, include_one);
    let dim = masks.len();
    for a in 0..dim {
        for b in 0..dim {
            let (ma, mb) = (masks[a], masks[b]);
            let mut v = GF2Vector::zeros(dim);
            for i in 0..n {
                if ma >> i & 1 == 1 && mb >> i & 1 == 1 {
                    let (fa, gb) = (ma & !(1 << i), mb & !(1 << i));
                    if fa & gb == 0 {
                        if let Some(k) = masks.iter().position(|&x| x == fa | gb) {
                            v.flip(k);
                        }
                    }
                }
            }
            p.bracket[a][b] = v;
        }
    }
    p
}

/// `po_I(n, 1)`: its bracket has `{z_i, z_i} = 1` and is not alternating.
pub fn po_i(n: usize) -> AlgebraPresentation {
    po_i_bracket(n, true)
}

/// `h_I(n, 1) = po_I(n, 1) / span{1}`: a Lie algebra with zero 2-map table
/// (which need not be a valid 2-map).
pub fn h_i(n: usize) -> AlgebraPresentation {
    let mut p = po_i_bracket(n, false);
    p.ensure_two_map();
    p
}

/// `(GF(2)[x]/(x^2), Der, id)`; `L` has basis `d/dx`, `x d/dx`.
pub fn dual_numbers_derivations() -> LieRinehartPresentation {
    derivation_lie_rinehart(&dual_numbers()).expect("dual numbers carry a product")
}

/// `(GF(2), h3, 0)`.
pub fn heisenberg_over_field() -> LieRinehartPresentation {
    let mut base = AlgebraPresentation::with_names(vec!["1".into()]);
    base.set_product(0, 0, base.basis(0));
    base.unit = Some(base.basis(0));
    let mut lie = heisenberg3();
    lie.product = None;
    let action = vec![(0..3).map(|j| lie.basis(j)).collect()];
    LieRinehartPresentation {
        base,
        lie,
        action,
        anchor: vec![GF2Matrix::zeros(1, 1); 3],
    }
}

/// `A` as a module over a Lie–Rinehart algebra `(A, L, θ)`.
pub fn base_module(lr: &LieRinehartPresentation) -> ModulePresentation {
    ModulePresentation::base(lr)
}

/// Trivial one-dimensional module over a Lie–Rinehart algebra whose base is
/// `GF(2)`.
pub fn trivial_line_module(lr: &LieRinehartPresentation) -> ModulePresentation {
    ModulePresentation {
        dim: 1,
        rho: vec![GF2Matrix::zeros(1, 1); lr.lie.dim],
        a_action: Some(vec![GF2Matrix::identity(1); lr.base.dim]),
    }
}

/// What a catalog algebra is meant to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Restricted Poisson algebra (passes the Poisson verifier).
    Poisson,
    /// Restricted Lie algebra without product.
    RestrictedLie,
    /// Negative example: the bracket is not alternating.
    NotAlternating,
    /// Negative example: a Lie algebra admitting no 2-map.
    NotRestrictable,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: Kind,
    pub build: fn() -> AlgebraPresentation,
    /// Reference values `(theory, degree, dim H)`.
    pub expected: Vec<(Theory, usize, usize)>,
}

/// All built-in algebras.
pub fn entries() -> Vec<CatalogEntry> {
    use Theory::{CE, PA};
    vec![
        CatalogEntry {
            id: "heisenberg3",
            kind: Kind::Poisson,
            build: heisenberg3,
            expected: vec![(PA, 1, 2), (PA, 2, 2), (CE, 1, 4), (CE, 2, 2)],
        },
        CatalogEntry {
            id: "rigid3",
            kind: Kind::Poisson,
            build: rigid3,
            expected: vec![(PA, 1, 0), (PA, 2, 0), (CE, 1, 2), (CE, 2, 1)],
        },
        CatalogEntry {
            id: "nonrigid3",
            kind: Kind::Poisson,
            build: nonrigid3,
            expected: vec![(PA, 1, 0), (PA, 2, 1)],
        },
        CatalogEntry {
            id: "po_pi2",
            kind: Kind::Poisson,
            build: || po_pi(1, &[]),
            expected: vec![(PA, 1, 0), (PA, 2, 1), (CE, 2, 6)],
        },
        CatalogEntry {
            id: "po_pi4",
            kind: Kind::Poisson,
            build: || po_pi(2, &[]),
            expected: vec![(PA, 1, 0)],
        },
        CatalogEntry {
            id: "dual_numbers",
            kind: Kind::Poisson,
            build: dual_numbers,
            expected: vec![],
        },
        CatalogEntry {
            id: "divided_powers_1_2",
            kind: Kind::Poisson,
            build: || divided_powers(&[2]),
            expected: vec![],
        },
        CatalogEntry {
            id: "h_i1",
            kind: Kind::RestrictedLie,
            build: || h_i(1),
            expected: vec![],
        },
        CatalogEntry {
            id: "po_i1",
            kind: Kind::NotAlternating,
            build: || po_i(1),
            expected: vec![],
        },
        CatalogEntry {
            id: "h_i2",
            kind: Kind::NotRestrictable,
            build: || h_i(2),
            expected: vec![],
        },
    ]
}

pub fn lookup(id: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.id == id)
}

/// Built-in Lie–Rinehart algebras with a module used for their cohomology.
pub fn lie_rinehart_entries() -> Vec<(&'static str, LieRinehartPresentation, ModulePresentation)> {
    let der = dual_numbers_derivations();
    let der_module = base_module(&der);
    let h = heisenberg_over_field();
    let h_module = trivial_line_module(&h);
    vec![
        ("dual_numbers_derivations", der, der_module),
        ("heisenberg_over_field", h, h_module),
    ]
}
