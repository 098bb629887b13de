//! Line-based presentation files.
//!
//! ```text
//! # Heisenberg algebra
//! kind poisson
//! dim 3
//! basis e1 e2 e3
//! bracket e1 e2 = e3
//! product e1 e2 = e3
//! ```
//!
//! Omitted table entries are zero. Elements are sums `a+b` of basis names
//! or 1-based indices (names take precedence), or `0`. Matrices are written
//! as whitespace-separated rows of bits.

use std::collections::HashSet;
use std::fmt::Write as _;

use rpoisson_core::{
    AlgebraPresentation, CochainComplex, GF2Matrix, GF2Vector, LieRinehartPresentation,
    ModulePresentation, RestrictedCochain,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lie,
    Poisson,
    LieRinehart,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Lie => "lie",
            Kind::Poisson => "poisson",
            Kind::LieRinehart => "lie-rinehart",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    /// A Lie algebra; it carries a 2-map iff the file says `restricted`.
    Lie(AlgebraPresentation),
    Poisson(AlgebraPresentation),
    LieRinehart(LieRinehartPresentation),
}

impl Presentation {
    pub fn kind(&self) -> Kind {
        match self {
            Presentation::Lie(_) => Kind::Lie,
            Presentation::Poisson(_) => Kind::Poisson,
            Presentation::LieRinehart(_) => Kind::LieRinehart,
        }
    }
}

struct Line<'a> {
    no: usize,
    keyword: &'a str,
    args: Vec<&'a str>,
    rhs: Option<&'a str>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                return None;
            }
            let (lhs, rhs) = match body.split_once('=') {
                Some((l, r)) => (l.trim(), Some(r.trim())),
                None => (body, None),
            };
            let mut words = lhs.split_whitespace();
            let keyword = words.next().unwrap_or("");
            Some(Line {
                no: i + 1,
                keyword,
                args: words.collect(),
                rhs,
            })
        })
        .collect()
}

/// Basis names with lookup by name or 1-based index.
struct Names<'a> {
    names: &'a [String],
}

impl Names<'_> {
    fn index(&self, line: usize, token: &str) -> Result<usize, ParseError> {
        if let Some(i) = self.names.iter().position(|n| n == token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(k) if k >= 1 && k <= self.names.len() => Ok(k - 1),
            _ => err(line, format!("unknown basis element `{token}`")),
        }
    }

    fn element(&self, line: usize, text: &str) -> Result<GF2Vector, ParseError> {
        let mut v = GF2Vector::zeros(self.names.len());
        if text.trim() == "0" {
            return Ok(v);
        }
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return err(line, "empty term in sum");
            }
            v.flip(self.index(line, term)?);
        }
        Ok(v)
    }
}

fn format_elem(names: &[String], v: &GF2Vector) -> String {
    if v.is_zero() {
        "0".into()
    } else {
        v.iter_ones()
            .map(|i| names[i].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn parse_dim(l: &Line) -> Result<usize, ParseError> {
    match (l.args.as_slice(), l.rhs) {
        ([d], None) => d
            .parse()
            .or_else(|_| err(l.no, format!("invalid dimension `{d}`"))),
        _ => err(l.no, format!("expected `{} <n>`", l.keyword)),
    }
}

fn parse_names(l: &Line, dim: usize) -> Result<Vec<String>, ParseError> {
    if l.rhs.is_some() || l.args.len() != dim {
        return err(l.no, format!("expected {dim} basis names"));
    }
    let mut seen = HashSet::new();
    for a in &l.args {
        if !seen.insert(*a) || *a == "0" || a.contains('+') {
            return err(l.no, format!("invalid or repeated basis name `{a}`"));
        }
    }
    Ok(l.args.iter().map(|s| s.to_string()).collect())
}

fn parse_matrix(l: &Line, n: usize) -> Result<GF2Matrix, ParseError> {
    let rhs = l.rhs.unwrap_or("");
    let rows: Vec<&str> = rhs.split_whitespace().collect();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return err(l.no, format!("expected {n} rows of {n} bits"));
    }
    GF2Matrix::parse_rows(&rows).map_or_else(|| err(l.no, "matrix rows must consist of 0 and 1"), Ok)
}

fn render_matrix(m: &GF2Matrix) -> String {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Dimension and basis names for one algebra (`prefix` is `""` or `base-`).
fn header(ls: &[Line], prefix: &str, default_name: &str) -> Result<Option<(usize, Vec<String>)>, ParseError> {
    let dim_kw = format!("{prefix}dim");
    let basis_kw = format!("{prefix}basis");
    let mut dim = None;
    let mut names = None;
    for l in ls {
        if l.keyword == dim_kw {
            if dim.is_some() {
                return err(l.no, format!("duplicate `{dim_kw}`"));
            }
            dim = Some(parse_dim(l)?);
        }
    }
    let Some(dim) = dim else {
        return Ok(None);
    };
    for l in ls {
        if l.keyword == basis_kw {
            if names.is_some() {
                return err(l.no, format!("duplicate `{basis_kw}`"));
            }
            names = Some(parse_names(l, dim)?);
        }
    }
    let names = names.unwrap_or_else(|| (1..=dim).map(|i| format!("{default_name}{i}")).collect());
    Ok(Some((dim, names)))
}

/// Fills bracket/product/two-map/unit entries of `p` from lines with the
/// given prefix; returns whether any `twomap` line or `restricted` was seen.
fn tables(ls: &[Line], prefix: &str, p: &mut AlgebraPresentation, allow_product: bool) -> Result<bool, ParseError> {
    let names = p.basis_names.clone();
    let n = Names { names: &names };
    let mut seen: HashSet<(String, usize, usize)> = HashSet::new();
    let mut restricted = false;
    for l in ls {
        let Some(kw) = l.keyword.strip_prefix(prefix) else {
            continue;
        };
        match kw {
            "bracket" | "product" => {
                if kw == "product" && !allow_product {
                    return err(l.no, "this kind has no product");
                }
                let ([a, b], Some(rhs)) = (l.args.as_slice(), l.rhs) else {
                    return err(l.no, format!("expected `{} <i> <j> = <element>`", l.keyword));
                };
                let (i, j) = (n.index(l.no, a)?, n.index(l.no, b)?);
                if !seen.insert((kw.to_string(), i.min(j), i.max(j))) {
                    return err(l.no, format!("duplicate {kw} entry"));
                }
                let v = n.element(l.no, rhs)?;
                if kw == "bracket" {
                    p.set_bracket(i, j, v);
                } else {
                    p.set_product(i, j, v);
                }
            }
            "twomap" => {
                let ([a], Some(rhs)) = (l.args.as_slice(), l.rhs) else {
                    return err(l.no, format!("expected `{} <i> = <element>`", l.keyword));
                };
                let i = n.index(l.no, a)?;
                if !seen.insert(("twomap".into(), i, i)) {
                    return err(l.no, "duplicate twomap entry");
                }
                p.set_two_map(i, n.element(l.no, rhs)?);
                restricted = true;
            }
            "unit" => {
                let (true, Some(rhs)) = (l.args.is_empty(), l.rhs) else {
                    return err(l.no, format!("expected `{} = <element>`", l.keyword));
                };
                if p.unit.is_some() {
                    return err(l.no, "duplicate unit");
                }
                if !allow_product {
                    return err(l.no, "this kind has no product");
                }
                p.unit = Some(n.element(l.no, rhs)?);
            }
            "restricted" if prefix.is_empty() => {
                if !l.args.is_empty() || l.rhs.is_some() {
                    return err(l.no, "`restricted` takes no arguments");
                }
                restricted = true;
            }
            _ => {}
        }
    }
    Ok(restricted)
}

const ALGEBRA_KEYWORDS: &[&str] = &["kind", "dim", "basis", "bracket", "product", "twomap", "unit", "restricted"];
const LR_KEYWORDS: &[&str] = &[
    "kind", "dim", "basis", "bracket", "twomap", "restricted", "base-dim", "base-basis", "base-product",
    "base-unit", "action", "anchor",
];

fn check_keywords(ls: &[Line], allowed: &[&str]) -> Result<(), ParseError> {
    for l in ls {
        if !allowed.contains(&l.keyword) {
            return err(l.no, format!("unexpected `{}`", l.keyword));
        }
    }
    Ok(())
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let ls = lines(text);
    let kinds: Vec<&Line> = ls.iter().filter(|l| l.keyword == "kind").collect();
    let kind = match kinds.as_slice() {
        [l] => match (l.args.as_slice(), l.rhs) {
            (["lie"], None) => Kind::Lie,
            (["poisson"], None) => Kind::Poisson,
            (["lie-rinehart"], None) => Kind::LieRinehart,
            _ => return err(l.no, "kind must be lie, poisson or lie-rinehart"),
        },
        [] => return err(0, "missing `kind`"),
        [_, l, ..] => return err(l.no, "duplicate `kind`"),
    };
    match kind {
        Kind::Lie | Kind::Poisson => {
            check_keywords(&ls, ALGEBRA_KEYWORDS)?;
            let Some((_, names)) = header(&ls, "", "e")? else {
                return err(0, "missing `dim`");
            };
            let mut p = AlgebraPresentation::with_names(names);
            let poisson = kind == Kind::Poisson;
            let restricted = tables(&ls, "", &mut p, poisson)?;
            if poisson || restricted {
                p.ensure_two_map();
            }
            if poisson {
                p.ensure_product();
                Ok(Presentation::Poisson(p))
            } else {
                Ok(Presentation::Lie(p))
            }
        }
        Kind::LieRinehart => {
            check_keywords(&ls, LR_KEYWORDS)?;
            let Some((_, base_names)) = header(&ls, "base-", "a")? else {
                return err(0, "missing `base-dim`");
            };
            let Some((_, names)) = header(&ls, "", "e")? else {
                return err(0, "missing `dim`");
            };
            let mut base = AlgebraPresentation::with_names(base_names.clone());
            tables(&ls, "base-", &mut base, true)?;
            base.ensure_product();
            let mut lie = AlgebraPresentation::with_names(names.clone());
            tables(&ls, "", &mut lie, false)?;
            lie.ensure_two_map();
            let (na, nl) = (base.dim, lie.dim);
            let bn = Names { names: &base_names };
            let ln = Names { names: &names };
            let mut action: Vec<Vec<GF2Vector>> = vec![vec![GF2Vector::zeros(nl); nl]; na];
            // Without explicit entries the unit acts as the identity.
            let unit_index = base.unit.as_ref().filter(|u| u.count_ones() == 1).and_then(|u| u.lowest_one());
            let mut anchor = vec![GF2Matrix::zeros(na, na); nl];
            let mut seen = HashSet::new();
            let mut any_action = false;
            for l in &ls {
                match l.keyword {
                    "action" => {
                        let ([a, j], Some(rhs)) = (l.args.as_slice(), l.rhs) else {
                            return err(l.no, "expected `action <a> <x> = <element>`");
                        };
                        let (a, j) = (bn.index(l.no, a)?, ln.index(l.no, j)?);
                        if !seen.insert(("action", a, j)) {
                            return err(l.no, "duplicate action entry");
                        }
                        action[a][j] = ln.element(l.no, rhs)?;
                        any_action = true;
                    }
                    "anchor" => {
                        let [j] = l.args.as_slice() else {
                            return err(l.no, "expected `anchor <x> = <rows>`");
                        };
                        let j = ln.index(l.no, j)?;
                        if !seen.insert(("anchor", j, 0)) {
                            return err(l.no, "duplicate anchor entry");
                        }
                        anchor[j] = parse_matrix(l, na)?;
                    }
                    _ => {}
                }
            }
            if !any_action {
                if let Some(u) = unit_index {
                    for (j, slot) in action[u].iter_mut().enumerate() {
                        *slot = lie.basis(j);
                    }
                }
            }
            Ok(Presentation::LieRinehart(LieRinehartPresentation {
                base,
                lie,
                action,
                anchor,
            }))
        }
    }
}

fn render_tables(out: &mut String, prefix: &str, p: &AlgebraPresentation, with_two_map: bool) {
    let names = &p.basis_names;
    if let Some(u) = &p.unit {
        let _ = writeln!(out, "{prefix}unit = {}", format_elem(names, u));
    }
    for i in 0..p.dim {
        for j in i..p.dim {
            let v = &p.bracket[i][j];
            if !v.is_zero() {
                let _ = writeln!(out, "{prefix}bracket {} {} = {}", names[i], names[j], format_elem(names, v));
            }
        }
    }
    if let Some(t) = &p.product {
        for i in 0..p.dim {
            for j in i..p.dim {
                if !t[i][j].is_zero() {
                    let _ = writeln!(out, "{prefix}product {} {} = {}", names[i], names[j], format_elem(names, &t[i][j]));
                }
            }
        }
    }
    if with_two_map {
        if let Some(t) = &p.two_map {
            for (i, v) in t.iter().enumerate() {
                if !v.is_zero() {
                    let _ = writeln!(out, "{prefix}twomap {} = {}", names[i], format_elem(names, v));
                }
            }
        }
    }
}

fn render_header(out: &mut String, prefix: &str, p: &AlgebraPresentation) {
    let _ = writeln!(out, "{prefix}dim {}", p.dim);
    if p.dim > 0 {
        let _ = writeln!(out, "{prefix}basis {}", p.basis_names.join(" "));
    }
}

/// Canonical text; `parse_presentation(render_presentation(p)) == p`.
pub fn render_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind {}", p.kind().as_str());
    match p {
        Presentation::Lie(a) | Presentation::Poisson(a) => {
            render_header(&mut out, "", a);
            if matches!(p, Presentation::Lie(_)) && a.two_map.is_some() {
                out.push_str("restricted\n");
            }
            render_tables(&mut out, "", a, true);
        }
        Presentation::LieRinehart(lr) => {
            render_header(&mut out, "base-", &lr.base);
            render_tables(&mut out, "base-", &lr.base, false);
            render_header(&mut out, "", &lr.lie);
            render_tables(&mut out, "", &lr.lie, true);
            let (bn, ln) = (&lr.base.basis_names, &lr.lie.basis_names);
            for (a, row) in lr.action.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let _ = writeln!(out, "action {} {} = {}", bn[a], ln[j], format_elem(ln, v));
                    }
                }
            }
            if lr.action.iter().all(|r| r.iter().all(GF2Vector::is_zero)) && lr.lie.dim > 0 {
                // Keep the all-zero action distinguishable from the default.
                let _ = writeln!(out, "action {} {} = 0", bn[0], ln[0]);
            }
            for (j, m) in lr.anchor.iter().enumerate() {
                if !m.is_zero() {
                    let _ = writeln!(out, "anchor {} = {}", ln[j], render_matrix(m));
                }
            }
        }
    }
    out
}

/// A module over the Lie–Rinehart algebra of the accompanying file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFile {
    pub names: Vec<String>,
    pub module: ModulePresentation,
}

/// `kind module`, `dim`, `basis`, `rho <x> = <rows>`, `a-action <a> = <rows>`.
/// Missing `rho` entries are zero; missing `a-action` entries make the
/// unit act as the identity and other basis elements as zero.
pub fn parse_module(text: &str, lr: &LieRinehartPresentation) -> Result<ModuleFile, ParseError> {
    let ls = lines(text);
    check_keywords(&ls, &["kind", "dim", "basis", "rho", "a-action"])?;
    match ls.iter().find(|l| l.keyword == "kind") {
        Some(l) if l.args == ["module"] && l.rhs.is_none() => {}
        Some(l) => return err(l.no, "kind must be module"),
        None => return err(0, "missing `kind`"),
    }
    let Some((dim, names)) = header(&ls, "", "m")? else {
        return err(0, "missing `dim`");
    };
    let ln = Names {
        names: &lr.lie.basis_names,
    };
    let bn = Names {
        names: &lr.base.basis_names,
    };
    let mut rho = vec![GF2Matrix::zeros(dim, dim); lr.lie.dim];
    let mut acts: Vec<Option<GF2Matrix>> = vec![None; lr.base.dim];
    let mut seen = HashSet::new();
    for l in &ls {
        match l.keyword {
            "rho" => {
                let [x] = l.args.as_slice() else {
                    return err(l.no, "expected `rho <x> = <rows>`");
                };
                let j = ln.index(l.no, x)?;
                if !seen.insert(("rho", j)) {
                    return err(l.no, "duplicate rho entry");
                }
                rho[j] = parse_matrix(l, dim)?;
            }
            "a-action" => {
                let [a] = l.args.as_slice() else {
                    return err(l.no, "expected `a-action <a> = <rows>`");
                };
                let a = bn.index(l.no, a)?;
                if !seen.insert(("a", a)) {
                    return err(l.no, "duplicate a-action entry");
                }
                acts[a] = Some(parse_matrix(l, dim)?);
            }
            _ => {}
        }
    }
    let unit = lr.base.unit.as_ref().and_then(|u| (u.count_ones() == 1).then(|| u.lowest_one()).flatten());
    let any = acts.iter().any(Option::is_some);
    let a_action = acts
        .into_iter()
        .enumerate()
        .map(|(a, m)| {
            m.unwrap_or_else(|| {
                if !any && Some(a) == unit {
                    GF2Matrix::identity(dim)
                } else {
                    GF2Matrix::zeros(dim, dim)
                }
            })
        })
        .collect();
    Ok(ModuleFile {
        names,
        module: ModulePresentation {
            dim,
            rho,
            a_action: Some(a_action),
        },
    })
}

pub fn render_module(m: &ModuleFile, lr: &LieRinehartPresentation) -> String {
    let mut out = String::from("kind module\n");
    let _ = writeln!(out, "dim {}", m.module.dim);
    if m.module.dim > 0 {
        let _ = writeln!(out, "basis {}", m.names.join(" "));
    }
    for (j, r) in m.module.rho.iter().enumerate() {
        if !r.is_zero() {
            let _ = writeln!(out, "rho {} = {}", lr.lie.basis_names[j], render_matrix(r));
        }
    }
    if let Some(acts) = &m.module.a_action {
        for (a, r) in acts.iter().enumerate() {
            let _ = writeln!(out, "a-action {} = {}", lr.base.basis_names[a], render_matrix(r));
        }
    }
    out
}

/// Degree-2 cochain `phi <x> <y> = <m>`, `omega <x> = <m>`; omitted values
/// are zero.
pub fn parse_cocycle(
    text: &str,
    complex: &CochainComplex,
    lie_names: &[String],
    module_names: &[String],
) -> Result<GF2Vector, ParseError> {
    let ls = lines(text);
    check_keywords(&ls, &["phi", "omega"])?;
    let layout = complex.layout(2).map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })?;
    let mut c = RestrictedCochain::zero(layout);
    let ln = Names { names: lie_names };
    let mn = Names { names: module_names };
    let mut seen = HashSet::new();
    for l in &ls {
        let Some(rhs) = l.rhs else {
            return err(l.no, "missing `= <value>`");
        };
        let v = mn.element(l.no, rhs)?;
        match (l.keyword, l.args.as_slice()) {
            ("phi", [x, y]) => {
                let (i, j) = (ln.index(l.no, x)?, ln.index(l.no, y)?);
                if i == j {
                    return err(l.no, "phi is alternating; arguments must differ");
                }
                if !seen.insert((0, i.min(j), i.max(j))) {
                    return err(l.no, "duplicate phi entry");
                }
                c.set_phi(&[i.min(j), i.max(j)], &v);
            }
            ("omega", [x]) => {
                let i = ln.index(l.no, x)?;
                if !seen.insert((1, i, i)) {
                    return err(l.no, "duplicate omega entry");
                }
                c.set_omega(i, &[], &v);
            }
            _ => return err(l.no, "expected `phi <x> <y> = <m>` or `omega <x> = <m>`"),
        }
    }
    Ok(c.coords)
}

/// Basis values of a cochain: `(φ tuples, ω entries)` with nonzero values.
pub type CochainValues = (Vec<(Vec<usize>, GF2Vector)>, Vec<(usize, Vec<usize>, GF2Vector)>);

pub fn cochain_values(c: &RestrictedCochain) -> CochainValues {
    let l = &c.layout;
    let m = l.dim_m;
    let read = |base: usize| GF2Vector::from_indices(m, (0..m).filter(|&k| c.coords.get(base + k)));
    let phi = l
        .phi_index
        .iter()
        .map(|t| (t.clone(), read(l.phi_coord(t, 0))))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let omega = l
        .omega_index
        .iter()
        .map(|(i, z)| (*i, z.clone(), read(l.omega_coord(*i, z, 0))))
        .filter(|(_, _, v)| !v.is_zero())
        .collect();
    (phi, omega)
}

pub fn render_elem(names: &[String], v: &GF2Vector) -> String {
    format_elem(names, v)
}
