use proptest::prelude::*;
use rpoisson_core::catalog;
use rpoisson_core::gf2::quotient;
use rpoisson_core::{CochainComplex, GF2Matrix, GF2Vector, Subspace, Theory};

fn matrix() -> impl Strategy<Value = GF2Matrix> {
    (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(move |rows| {
            let rows: Vec<GF2Vector> = rows.iter().map(|b| GF2Vector::from_bools(b)).collect();
            GF2Matrix::from_rows(c, &rows)
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_finds_preimages(m in matrix(), seed in any::<u64>()) {
        let x = GF2Vector::from_mask(m.cols(), seed & ((1u64 << m.cols()) - 1));
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn quotient_dimensions(m in matrix()) {
        // B ⊆ Z: every other kernel basis vector.
        let z = m.kernel_basis();
        let b = Subspace::from_spanning(m.cols(), z.basis().iter().step_by(2).cloned());
        let q = quotient(&z, &b).unwrap();
        prop_assert_eq!(q.dim() + b.dim(), z.dim());
        for (i, r) in q.representatives().iter().enumerate() {
            prop_assert_eq!(q.class_coordinates(r), GF2Vector::unit(q.dim(), i));
        }
    }

    #[test]
    fn differentials_compose_to_zero(entry in 0usize..3, n in 0usize..3, seed in any::<u64>()) {
        let id = ["heisenberg3", "nonrigid3", "dual_numbers"][entry];
        let p = (catalog::lookup(id).unwrap().build)();
        for t in [Theory::CE, Theory::RES, Theory::PA] {
            let c = CochainComplex::for_algebra(&p, t).unwrap();
            let basis = c.space(n).unwrap().constraint_basis.clone();
            let coeffs = GF2Vector::from_mask(basis.dim(), seed & ((1u64 << basis.dim().min(63)) - 1));
            let v = basis.combine(&coeffs);
            let dv = c.apply_differential(n, &v).unwrap();
            prop_assert!(c.is_cochain(n + 1, &dv).unwrap());
            prop_assert!(c.apply_differential(n + 1, &dv).unwrap().is_zero());
        }
    }
}
