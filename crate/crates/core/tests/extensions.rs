use proptest::prelude::*;
use rpoisson_core::catalog::lie_rinehart_entries;
use rpoisson_core::extensions::{
    build_extension, canonical_section, cocycle_from_splitting, extensions_equivalent, induced_module,
    lr_complex, map_to_cochain, perturb_section,
};
use rpoisson_core::{
    verify_lie_rinehart, ExtensionData, GF2Matrix, GF2Vector, LieRinehartPresentation, ModulePresentation,
};

/// All `A`-linear maps `L → M`, as `dim M × dim L` matrices, by enumeration.
fn a_linear_maps(lr: &LieRinehartPresentation, m: &ModulePresentation) -> Vec<GF2Matrix> {
    let (nl, nm) = (lr.lie.dim, m.dim);
    let n = nl * nm;
    assert!(n <= 16);
    (0..1u64 << n)
        .map(|mask| {
            let mut t = GF2Matrix::zeros(nm, nl);
            for k in 0..n {
                if mask >> k & 1 == 1 {
                    t.set(k % nm, k / nm, true);
                }
            }
            t
        })
        .filter(|t| {
            (0..lr.base.dim).all(|a| {
                let av = lr.base.basis(a);
                (0..nl).all(|j| {
                    t.mul_vec(&lr.act(&av, &lr.lie.basis(j))) == m.a_of(&av).mul_vec(&t.column(j))
                })
            })
        })
        .collect()
}

fn cocycle_basis(lr: &LieRinehartPresentation, m: &ModulePresentation) -> Vec<GF2Vector> {
    lr_complex(lr, m).unwrap().cocycles(2).unwrap().basis().to_vec()
}

#[test]
fn round_trip_on_every_class() {
    for (id, lr, m) in lie_rinehart_entries() {
        let h = lr_complex(&lr, &m).unwrap().cohomology(2).unwrap();
        for r in &h.representatives {
            let e = ExtensionData::new(lr.clone(), m.clone(), r.coords.clone()).unwrap();
            let ext = build_extension(&e).unwrap();
            assert!(verify_lie_rinehart(&ext).unwrap().is_ok(), "{id}");
            let s = canonical_section(lr.lie.dim, m.dim);
            assert_eq!(cocycle_from_splitting(&lr, &m, &ext, &s).unwrap(), r.coords, "{id}");
            assert_eq!(induced_module(&lr, m.dim, &ext, &s).unwrap(), m, "{id}");
        }
    }
}

#[test]
fn every_cocycle_round_trips() {
    for (_, lr, m) in lie_rinehart_entries() {
        let basis = cocycle_basis(&lr, &m);
        assert!(basis.len() <= 12);
        for mask in 0..1u64 << basis.len() {
            let mut c = GF2Vector::zeros(basis[0].len());
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c += b;
                }
            }
            let e = ExtensionData::new(lr.clone(), m.clone(), c.clone()).unwrap();
            let ext = build_extension(&e).unwrap();
            let s = canonical_section(lr.lie.dim, m.dim);
            assert_eq!(cocycle_from_splitting(&lr, &m, &ext, &s).unwrap(), c);
        }
    }
}

#[test]
fn perturbed_sections_differ_by_the_coboundary_of_tau() {
    for (_, lr, m) in lie_rinehart_entries() {
        let complex = lr_complex(&lr, &m).unwrap();
        let h = complex.cohomology(2).unwrap();
        let taus = a_linear_maps(&lr, &m);
        assert!(taus.len() > 1);
        for r in &h.representatives {
            let e = ExtensionData::new(lr.clone(), m.clone(), r.coords.clone()).unwrap();
            let ext = build_extension(&e).unwrap();
            let s = canonical_section(lr.lie.dim, m.dim);
            for tau in &taus {
                let s2 = perturb_section(&s, tau);
                let c2 = cocycle_from_splitting(&lr, &m, &ext, &s2).unwrap();
                let mut diff = c2.clone();
                diff += &r.coords;
                let psi = map_to_cochain(&complex, tau).unwrap();
                assert_eq!(diff, complex.apply_differential(1, &psi).unwrap());
                let e2 = ExtensionData::new(lr.clone(), m.clone(), c2).unwrap();
                assert!(extensions_equivalent(&e, &e2).unwrap());
            }
        }
    }
}

#[test]
fn coboundary_of_tau_by_hand() {
    // φ(x,y) = ρ(x)τ(y) + ρ(y)τ(x) + τ[x,y], ω(x) = ρ(x)τ(x) + τ(x^[2]).
    for (_, lr, m) in lie_rinehart_entries() {
        let complex = lr_complex(&lr, &m).unwrap();
        for tau in a_linear_maps(&lr, &m) {
            let psi = map_to_cochain(&complex, &tau).unwrap();
            let c = complex.cochain(2, complex.apply_differential(1, &psi).unwrap()).unwrap();
            let l = &lr.lie;
            for i in 0..l.dim {
                let x = l.basis(i);
                for j in 0..l.dim {
                    let y = l.basis(j);
                    let mut want = m.rho_of(&x).mul_vec(&tau.mul_vec(&y));
                    want += &m.rho_of(&y).mul_vec(&tau.mul_vec(&x));
                    want += &tau.mul_vec(&l.bracket(&x, &y));
                    assert_eq!(c.eval_phi(&[x.clone(), y]).unwrap(), want);
                }
                let mut want = m.rho_of(&x).mul_vec(&tau.mul_vec(&x));
                want += &tau.mul_vec(&l.two_map(&x));
                assert_eq!(c.eval_omega(&x, &[]).unwrap(), want);
            }
        }
    }
}

#[test]
fn independent_classes_are_inequivalent() {
    for (_, lr, m) in lie_rinehart_entries() {
        let h = lr_complex(&lr, &m).unwrap().cohomology(2).unwrap();
        let exts: Vec<ExtensionData> = h
            .representatives
            .iter()
            .map(|r| ExtensionData::new(lr.clone(), m.clone(), r.coords.clone()).unwrap())
            .collect();
        for (i, a) in exts.iter().enumerate() {
            for (j, b) in exts.iter().enumerate() {
                assert_eq!(extensions_equivalent(a, b).unwrap(), i == j);
            }
        }
    }
}

#[test]
fn mismatched_bases_are_rejected() {
    let entries = lie_rinehart_entries();
    let a = ExtensionData::semidirect(entries[0].1.clone(), entries[0].2.clone()).unwrap();
    let b = ExtensionData::semidirect(entries[1].1.clone(), entries[1].2.clone()).unwrap();
    assert!(extensions_equivalent(&a, &b).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_cocycles_round_trip(entry in 0usize..2, mask in any::<u64>()) {
        let (_, lr, m) = lie_rinehart_entries().swap_remove(entry);
        let basis = cocycle_basis(&lr, &m);
        let mut c = GF2Vector::zeros(basis[0].len());
        for (i, b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c += b;
            }
        }
        let e = ExtensionData::new(lr.clone(), m.clone(), c.clone()).unwrap();
        let ext = build_extension(&e).unwrap();
        let s = canonical_section(lr.lie.dim, m.dim);
        prop_assert_eq!(cocycle_from_splitting(&lr, &m, &ext, &s).unwrap(), c);
    }
}
