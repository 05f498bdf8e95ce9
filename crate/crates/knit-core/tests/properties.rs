//! Property-based checks of the algebraic laws underlying the crate: Koszul
//! sign arithmetic, linearity of graded maps, and the graded Lie structure of
//! the endomorphism bracket. Everything is exact, so properties assert
//! equality, never closeness.

use knit_core::{
    end_bracket, parity_sign, GradedBasis, GradedLinearMap, GradedVector, GradingMode, Rational,
    ShiftedEndomorphism,
};
use proptest::prelude::*;

/// Raw material for a graded space with three homogeneous endomorphisms and a
/// couple of vectors: degrees, one shift per map, and integer coefficients.
#[derive(Clone, Debug)]
struct Setup {
    mode: GradingMode,
    degrees: Vec<i64>,
    shifts: Vec<i64>,
    map_coeffs: Vec<i64>,
    vec_coeffs: Vec<i64>,
    scalar: i64,
}

impl Setup {
    fn basis(&self) -> GradedBasis {
        let entries =
            self.degrees.iter().enumerate().map(|(i, &d)| (format!("x{i}"), d)).collect();
        GradedBasis::new(entries, self.mode).unwrap()
    }

    /// The `k`-th homogeneous endomorphism: entry `(i, j)` is used only when
    /// the degrees match the map's shift, so the result is always legal.
    fn map(&self, basis: &GradedBasis, k: usize) -> ShiftedEndomorphism {
        let n = basis.len();
        let shift = self.shifts[k];
        let coeffs = &self.map_coeffs[k * n * n..(k + 1) * n * n];
        let columns = (0..n)
            .map(|j| {
                let want = self.mode.add(basis.degree(j), shift);
                GradedVector::from_terms(
                    (0..n)
                        .filter(|&i| basis.degree(i) == want)
                        .map(|i| (i, Rational::from_integer(coeffs[j * n + i]))),
                )
            })
            .collect();
        GradedLinearMap::endomorphism(basis, shift, columns).unwrap()
    }

    fn vector(&self, which: usize) -> GradedVector {
        let n = self.degrees.len();
        GradedVector::from_terms(
            self.vec_coeffs[which * n..(which + 1) * n]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i, Rational::from_integer(c))),
        )
    }
}

fn arb_setup(mode: GradingMode) -> impl Strategy<Value = Setup> {
    let (deg, shift) = match mode {
        GradingMode::Z => (-2i64..=2, -2i64..=2),
        GradingMode::Z2 => (0i64..=1, 0i64..=1),
    };
    prop::collection::vec(deg, 3..=5).prop_flat_map(move |degrees| {
        let n = degrees.len();
        (
            Just(degrees),
            prop::collection::vec(shift.clone(), 3),
            prop::collection::vec(-3i64..=3, 3 * n * n),
            prop::collection::vec(-3i64..=3, 2 * n),
            -4i64..=4,
        )
            .prop_map(move |(degrees, shifts, map_coeffs, vec_coeffs, scalar)| Setup {
                mode,
                degrees,
                shifts,
                map_coeffs,
                vec_coeffs,
                scalar,
            })
    })
}

fn any_setup() -> impl Strategy<Value = Setup> {
    prop_oneof![arb_setup(GradingMode::Z), arb_setup(GradingMode::Z2)]
}

proptest! {
    /// The Koszul sign is symmetric and multiplicative in each argument, and
    /// doubling a degree always lands on the even side.
    #[test]
    fn parity_sign_laws(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6) {
        for mode in [GradingMode::Z, GradingMode::Z2] {
            prop_assert_eq!(parity_sign(a, b, mode), parity_sign(b, a, mode));
            prop_assert_eq!(
                parity_sign(a + b, c, mode),
                &parity_sign(a, c, mode) * &parity_sign(b, c, mode)
            );
            prop_assert!(parity_sign(2 * a, b, mode).is_one());
        }
    }

    /// Application of a graded map is additive and commutes with scaling.
    #[test]
    fn apply_is_linear(s in any_setup()) {
        let basis = s.basis();
        let m = s.map(&basis, 0);
        let (x, y) = (s.vector(0), s.vector(1));
        let c = Rational::from_integer(s.scalar);
        prop_assert_eq!(m.apply(&x.add(&y)), m.apply(&x).add(&m.apply(&y)));
        prop_assert_eq!(m.apply(&x.scale(&c)), m.apply(&x).scale(&c));
    }

    /// Composition is associative and adds shifts.
    #[test]
    fn compose_is_associative(s in any_setup()) {
        let basis = s.basis();
        let p = s.map(&basis, 0);
        let q = s.map(&basis, 1);
        let r = s.map(&basis, 2);
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(
            left.shift(),
            s.mode.add(s.mode.add(p.shift(), q.shift()), r.shift())
        );
    }

    /// The endomorphism bracket is graded-antisymmetric:
    /// `[p,q] + (-1)^{|p||q|}[q,p] = 0`.
    #[test]
    fn end_bracket_is_graded_antisymmetric(s in any_setup()) {
        let basis = s.basis();
        let p = s.map(&basis, 0);
        let q = s.map(&basis, 1);
        let sign = parity_sign(p.shift(), q.shift(), s.mode);
        let pq = end_bracket(&p, &q).unwrap();
        let qp = end_bracket(&q, &p).unwrap();
        prop_assert!(pq.add(&qp.scale(&sign)).unwrap().is_zero());
    }

    /// The endomorphism bracket satisfies the graded Jacobi identity in the
    /// adjoint form `[p,[q,r]] = [[p,q],r] + (-1)^{|p||q|}[q,[p,r]]`.
    #[test]
    fn end_bracket_satisfies_graded_jacobi(s in any_setup()) {
        let basis = s.basis();
        let p = s.map(&basis, 0);
        let q = s.map(&basis, 1);
        let r = s.map(&basis, 2);
        let sign = parity_sign(p.shift(), q.shift(), s.mode);
        let lhs = end_bracket(&p, &end_bracket(&q, &r).unwrap()).unwrap();
        let rhs = end_bracket(&end_bracket(&p, &q).unwrap(), &r)
            .unwrap()
            .add(&end_bracket(&q, &end_bracket(&p, &r).unwrap()).unwrap().scale(&sign))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
