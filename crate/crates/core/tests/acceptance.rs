//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion is evaluated faithfully. Criteria whose reference values
//! disagree with what the definitions produce are listed in
//! `KNOWN_DEVIATIONS`; they still print FAIL, and the target only exits
//! nonzero when a criterion outside that list fails (or one inside it
//! starts passing, so the list cannot go stale). The deviations are discussed in
//! the README.

mod support;

use std::time::{Duration, Instant};

use rpoisson_core::catalog::{self, lie_rinehart_entries, po_pi, po_pi_monomials, Kind};
use rpoisson_core::deformations::{extend_deformation, infinitesimal_classes, obstruction, DeformationData, Extension};
use rpoisson_core::extensions::{
    build_extension, canonical_section, cocycle_from_splitting, lr_complex, perturb_section,
};
use rpoisson_core::kaehler::{find_free_basis, kaehler_module, Comparison, FreeBasisSearch, DEFAULT_NODE_BUDGET};
use rpoisson_core::{
    two_map_from_basis, verify_restricted_lie, verify_restricted_poisson, AlgebraPresentation, CochainComplex,
    ExtensionData, GF2Matrix, GF2Vector, ModulePresentation, Theory,
};
use support::oracle::{dims, Setting};

/// Dimension comparisons are exact.
const DIM_TOLERANCE: usize = 0;
/// Advisory runtime budgets; reported, not part of the verdict.
const FAST_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(10);

/// Largest `dim Ω¹` whose Lie–Rinehart complex is added to criteria 3–4.
const KAEHLER_LR_MAX_DIM: usize = 8;

/// Criteria expected to print FAIL, with the reason in one line.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[
    (1, "reference dimensions for heisenberg3 (H²_CE, H²_PA), nonrigid3 (H²_PA) and po_pi2 (H²_PA) differ from the computed ones"),
    (5, "the constants on p and q are not forced to vanish at n = 1"),
    (6, "adding a central element to a basis value keeps every axiom"),
];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (pass, detail) = f();
    Outcome {
        id,
        name,
        pass,
        detail,
        elapsed: t.elapsed(),
    }
}

fn entry(id: &str) -> AlgebraPresentation {
    (catalog::lookup(id).expect("catalog id").build)()
}

fn h_dim(p: &AlgebraPresentation, theory: Theory, n: usize) -> usize {
    CochainComplex::for_algebra(p, theory).unwrap().cohomology(n).unwrap().dim_h
}

fn theories(kind: Kind) -> &'static [Theory] {
    match kind {
        Kind::Poisson => &[Theory::CE, Theory::RES, Theory::PA],
        Kind::RestrictedLie => &[Theory::CE, Theory::RES],
        Kind::NotRestrictable => &[Theory::CE],
        Kind::NotAlternating => &[],
    }
}

/// Every complex the catalog gives rise to, with a label.
fn all_complexes() -> Vec<(String, CochainComplex)> {
    let mut out = Vec::new();
    for e in catalog::entries() {
        let p = (e.build)();
        for &t in theories(e.kind) {
            out.push((format!("{} {t}", e.id), CochainComplex::for_algebra(&p, t).unwrap()));
        }
        // Extra coverage: the Kähler Lie–Rinehart algebra where it is free
        // and small enough for dense constraint solving.
        if e.kind == Kind::Poisson {
            if let Ok(c) = Comparison::new(&p, DEFAULT_NODE_BUDGET).and_then(|c| {
                if c.lie_rinehart.lie.dim <= KAEHLER_LR_MAX_DIM {
                    Ok(c)
                } else {
                    Err(rpoisson_core::KaehlerError::NotFree)
                }
            }) {
                let m = ModulePresentation::base(&c.lie_rinehart);
                out.push((
                    format!("{} Ω¹ LR", e.id),
                    CochainComplex::lie_rinehart(&c.lie_rinehart, &m).unwrap(),
                ));
            }
        }
    }
    for (id, lr, m) in lie_rinehart_entries() {
        out.push((format!("{id} LR"), CochainComplex::lie_rinehart(&lr, &m).unwrap()));
    }
    out
}

fn criterion_1() -> (bool, String) {
    use Theory::{CE, PA};
    let refs: &[(&str, Theory, usize, usize)] = &[
        ("heisenberg3", PA, 1, 2),
        ("heisenberg3", PA, 2, 2),
        ("heisenberg3", CE, 1, 4),
        ("heisenberg3", CE, 2, 2),
        ("rigid3", PA, 1, 0),
        ("rigid3", PA, 2, 0),
        ("rigid3", CE, 1, 2),
        ("rigid3", CE, 2, 1),
        ("nonrigid3", PA, 1, 0),
        ("nonrigid3", PA, 2, 1),
        ("po_pi2", PA, 1, 0),
        ("po_pi2", PA, 2, 1),
        ("po_pi2", CE, 2, 6),
    ];
    let mut bad = Vec::new();
    let mut slow = Vec::new();
    for &(id, t, n, want) in refs {
        let start = Instant::now();
        let got = h_dim(&entry(id), t, n);
        if start.elapsed() > FAST_BUDGET {
            slow.push(format!("{id} H^{n}_{t}"));
        }
        if got.abs_diff(want) > DIM_TOLERANCE {
            bad.push(format!("{id} H^{n}_{t}={got} (ref {want})"));
        }
    }
    // (0, ω) with ω(1) = 1 and ω = 0 on the other basis vectors.
    let p = entry("po_pi2");
    let c = CochainComplex::poisson(&p).unwrap();
    let layout = c.layout(2).unwrap();
    let mut v = GF2Vector::zeros(layout.ambient_dim());
    v.set(layout.omega_coord(0, &[], 0), true);
    let rep_ok = if !c.is_cochain(2, &v).unwrap() {
        bad.push("po_pi2 (0,ω) with ω(1)=1 is not a Poisson 2-cochain".into());
        false
    } else {
        let h = c.cohomology(2).unwrap();
        let b = c.coboundaries(2).unwrap();
        let ok = h.representatives.iter().any(|r| {
            let mut d = r.coords.clone();
            d += &v;
            b.contains(&d)
        });
        if !ok {
            bad.push("po_pi2 no representative cohomologous to (0,ω)".into());
        }
        ok
    };
    let mut detail = if bad.is_empty() {
        format!("{} reference dimensions match", refs.len())
    } else {
        format!("mismatches: {}", bad.join("; "))
    };
    if !slow.is_empty() {
        detail.push_str(&format!(" [over {FAST_BUDGET:?}: {}]", slow.join(", ")));
    }
    (bad.is_empty() && rep_ok, detail)
}

fn criterion_2() -> (bool, String) {
    let got = h_dim(&entry("po_pi4"), Theory::PA, 1);
    (got == 0, format!("po_pi4 dim H¹_PA = {got} (ref 0)"))
}

fn criterion_3() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (label, c) in all_complexes() {
        for n in 0..=3 {
            let images = match c.differential_images(n) {
                Ok(i) => i,
                Err(e) => {
                    bad.push(format!("{label} d^{n}: {e}"));
                    continue;
                }
            };
            let rows = c.layout(n + 2).unwrap().ambient_dim();
            let cols: Vec<GF2Vector> = images
                .iter()
                .map(|v| c.apply_differential(n + 1, v).unwrap())
                .collect();
            if !GF2Matrix::from_columns(rows, &cols).is_zero() {
                bad.push(format!("{label} d^{}∘d^{n} ≠ 0", n + 1));
            }
            checked += 1;
        }
    }
    (bad.is_empty(), format!("{checked} compositions; failures: {bad:?}"))
}

fn criterion_4() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (label, c) in all_complexes() {
        for n in 0..=3 {
            match c.differential_images(n) {
                // Each image is tested against the degree-(n+1) constraint
                // equations; a violation is reported as an error.
                Ok(images) => checked += images.len(),
                Err(e) => bad.push(format!("{label} degree {n}: {e}")),
            }
        }
    }
    (bad.is_empty(), format!("{checked} basis cochains; failures: {bad:?}"))
}

fn criterion_5() -> (bool, String) {
    let masks = po_pi_monomials(1);
    let mut wrong = Vec::new();
    for sel in 0..1u64 << masks.len() {
        let constants: Vec<u64> = (0..masks.len()).filter(|k| sel >> k & 1 == 1).map(|k| masks[k]).collect();
        let p = po_pi(1, &constants);
        let passes = verify_restricted_poisson(&p).unwrap().is_ok();
        if passes != constants.is_empty() {
            let names: Vec<String> = constants
                .iter()
                .map(|&m| p.basis_names[masks.iter().position(|&x| x == m).unwrap()].clone())
                .collect();
            wrong.push(format!("{{{}}}", names.join(",")));
        }
    }
    let total = 1u64 << masks.len();
    (
        wrong.is_empty(),
        format!("{total} constant tuples; verdict differs from 'all zero' for {wrong:?}"),
    )
}

fn criterion_6() -> (bool, String) {
    let mut mismatched = Vec::new();
    let mut survivors = Vec::new();
    let mut perturbations = 0;
    for e in catalog::entries() {
        if !matches!(e.kind, Kind::Poisson | Kind::RestrictedLie) {
            continue;
        }
        let p = (e.build)();
        let table: Vec<GF2Vector> = (0..p.dim).map(|i| p.two_map(&p.basis(i))).collect();
        match two_map_from_basis(&p, &table) {
            Ok(q) if q.two_map.as_ref() == Some(&table) => {}
            _ => mismatched.push(e.id),
        }
        let verify = |q: &AlgebraPresentation| match e.kind {
            Kind::Poisson => verify_restricted_poisson(q).unwrap().is_ok(),
            _ => verify_restricted_lie(q).unwrap().is_ok(),
        };
        let mut count = 0;
        for i in 0..p.dim {
            for bit in 0..p.dim {
                let mut t = table.clone();
                t[i].flip(bit);
                perturbations += 1;
                let ok = match two_map_from_basis(&p, &t) {
                    Ok(q) => verify(&q),
                    Err(_) => false,
                };
                if ok {
                    count += 1;
                }
            }
        }
        if count > 0 {
            survivors.push(format!("{}:{count}", e.id));
        }
    }
    (
        mismatched.is_empty() && survivors.is_empty(),
        format!(
            "reproduction failures {mismatched:?}; {perturbations} single-bit perturbations, still verified: {survivors:?}"
        ),
    )
}

fn criterion_7() -> (bool, String) {
    let a = entry("dual_numbers");
    let k = kaehler_module(&a).unwrap();
    let free = matches!(find_free_basis(&k, 1, DEFAULT_NODE_BUDGET), FreeBasisSearch::Found(ref b) if b.len() == 1);
    let c = Comparison::new(&a, DEFAULT_NODE_BUDGET).unwrap();
    let report = c.verify(1..=3).unwrap();
    let chain = report.report.is_ok();
    let mut equal = true;
    let mut dims_txt = Vec::new();
    for n in 1..=2 {
        let hp = c.pa.cohomology(n).unwrap().dim_h;
        let hl = c.lr.cohomology(n).unwrap().dim_h;
        equal &= hp == hl;
        dims_txt.push(format!("H^{n}: PA {hp} LR {hl}"));
    }
    (
        k.dim == 2 && free && chain && equal,
        format!(
            "dim Ω¹ = {}, free rank 1: {free}, Φ∘d_PA = d_LR∘Φ on 1..=3: {chain}, {}",
            k.dim,
            dims_txt.join(", ")
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let mut reps = 0;
    let mut bad = Vec::new();
    for (id, lr, m) in lie_rinehart_entries() {
        let complex = lr_complex(&lr, &m).unwrap();
        let h = complex.cohomology(2).unwrap();
        let s = canonical_section(lr.lie.dim, m.dim);
        // τ: first basis vector of L to the first basis vector of M, made
        // A-linear by acting on it.
        let taus: Vec<GF2Matrix> = (0..m.dim)
            .flat_map(|k| (0..lr.lie.dim).map(move |j| (j, k)))
            .filter_map(|(j, k)| {
                let mut t = GF2Matrix::zeros(m.dim, lr.lie.dim);
                t.set(k, j, true);
                let linear = (0..lr.base.dim).all(|a| {
                    let av = lr.base.basis(a);
                    (0..lr.lie.dim).all(|i| {
                        t.mul_vec(&lr.act(&av, &lr.lie.basis(i))) == m.a_of(&av).mul_vec(&t.column(i))
                    })
                });
                linear.then_some(t)
            })
            .collect();
        for r in &h.representatives {
            reps += 1;
            let e = ExtensionData::new(lr.clone(), m.clone(), r.coords.clone()).unwrap();
            let ext = build_extension(&e).unwrap();
            if cocycle_from_splitting(&lr, &m, &ext, &s).unwrap() != r.coords {
                bad.push(format!("{id}: round trip"));
            }
            for t in &taus {
                let c2 = cocycle_from_splitting(&lr, &m, &ext, &perturb_section(&s, t)).unwrap();
                let mut diff = c2;
                diff += &r.coords;
                if !complex.is_coboundary(2, &diff).unwrap() {
                    bad.push(format!("{id}: perturbed section not cohomologous"));
                }
            }
        }
    }
    (bad.is_empty() && reps > 0, format!("{reps} representatives; failures: {bad:?}"))
}

fn criterion_9() -> (bool, String) {
    let mut bad = Vec::new();
    let mut verdicts = Vec::new();
    let h = entry("heisenberg3");
    let c = rpoisson_core::deformations::poisson_complex(&h).unwrap();
    let zero = DeformationData::trivial(c, 1).unwrap();
    if !obstruction(&zero).unwrap().is_zero() {
        bad.push("zero deformation has a nonzero obstruction".to_string());
    }
    for id in ["heisenberg3", "nonrigid3"] {
        let (_, defs) = infinitesimal_classes(&entry(id)).unwrap();
        for (i, d) in defs.iter().enumerate() {
            match obstruction(d) {
                Ok(o) if d.complex.space(3).unwrap().satisfies_constraints(&o.coords) => {}
                _ => bad.push(format!("{id} class {i}: obstruction not in C³_PA")),
            }
            match extend_deformation(d).unwrap() {
                Extension::Extended(e) => {
                    if !e.verify_truncated().is_ok() {
                        bad.push(format!("{id} class {i}: order-2 verification fails"));
                    }
                    verdicts.push(format!("{id}#{i} extends"));
                }
                Extension::Obstructed { .. } => verdicts.push(format!("{id}#{i} obstructed")),
            }
        }
    }
    (bad.is_empty(), format!("{}; failures: {bad:?}", verdicts.join(", ")))
}

fn criterion_10() -> (bool, String) {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in catalog::entries() {
        let p = (e.build)();
        if p.dim > 3 {
            continue;
        }
        for &t in theories(e.kind) {
            let cx = CochainComplex::for_algebra(&p, t).unwrap();
            let s = Setting::for_algebra(&p, t);
            for n in 1..=2 {
                let r = cx.cohomology(n).unwrap();
                let o = dims(&s, n);
                checked += 1;
                if (r.dim_z, r.dim_b) != (o.dim_z, o.dim_b) {
                    bad.push(format!("{} {t} {n}", e.id));
                }
            }
        }
    }
    for (id, lr, m) in lie_rinehart_entries() {
        let cx = CochainComplex::lie_rinehart(&lr, &m).unwrap();
        let s = Setting::for_lie_rinehart(&lr, &m);
        for n in 1..=2 {
            let r = cx.cohomology(n).unwrap();
            let o = dims(&s, n);
            checked += 1;
            if (r.dim_z, r.dim_b) != (o.dim_z, o.dim_b) {
                bad.push(format!("{id} LR {n}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let note = if elapsed > ORACLE_BUDGET { " [over budget]" } else { "" };
    (bad.is_empty(), format!("{checked} (algebra, theory, degree) cases; mismatches: {bad:?}{note}"))
}

fn main() {
    let outcomes = vec![
        run(1, "reference cohomology dimensions", criterion_1),
        run(2, "po_pi4 first Poisson cohomology", criterion_2),
        run(3, "d∘d = 0", criterion_3),
        run(4, "closure of the constraint spaces", criterion_4),
        run(5, "normalization constants at n = 1", criterion_5),
        run(6, "2-map determined by basis values", criterion_6),
        run(7, "Kähler pipeline on the dual numbers", criterion_7),
        run(8, "extension round trip", criterion_8),
        run(9, "obstruction soundness", criterion_9),
        run(10, "oracle equivalence", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for o in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "CRITERION {:>2} {verdict} {} ({:.2?}): {}",
            o.id, o.name, o.elapsed, o.detail
        );
        let known = KNOWN_DEVIATIONS.iter().find(|(id, _)| *id == o.id);
        match (o.pass, known) {
            (false, None) => unexpected.push(format!("criterion {} failed", o.id)),
            (true, Some(_)) => unexpected.push(format!("criterion {} now passes; update KNOWN_DEVIATIONS", o.id)),
            (false, Some((_, why))) => println!("              known deviation: {why}"),
            _ => {}
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("ACCEPTANCE {passed}/{} PASS", outcomes.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results: {unexpected:?}");
        std::process::exit(1);
    }
}
