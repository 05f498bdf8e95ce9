//! Bundled example algebras, groups and knitted pairs.
//!
//! These fixtures back the test suite, the benchmarks and the CLI's example
//! files. Everything here is small enough to verify exhaustively.

use crate::error::Error;
use crate::finite_group::{permutations, FiniteGroup, SubgroupSelection};
use crate::graded_lie::GradedLieAlgebra;
use crate::grading::{GradedBasis, GradingMode};
use crate::knit_group::{decompose_group, KnitPairGroup};
use crate::knit_lie::{decompose_lie, KnitPairLie};
use crate::rational::Rational;
use crate::vector::GradedVector;

/// A structure-constant table entry: ((i, j), terms of [x_i, x_j]).
type TableRow = ((usize, usize), Vec<(usize, i64)>);

fn lie(entries: Vec<(&str, i64)>, mode: GradingMode, table: Vec<TableRow>) -> GradedLieAlgebra {
    let basis = GradedBasis::new(
        entries.into_iter().map(|(n, d)| (n.to_string(), d)).collect(),
        mode,
    )
    .expect("catalog basis is well formed");
    let table = table.into_iter().map(|(key, terms)| {
        let v = GradedVector::from_terms(
            terms.into_iter().map(|(k, c)| (k, Rational::from_integer(c))),
        );
        (key, v)
    });
    GradedLieAlgebra::new(basis, table).expect("catalog table is well formed")
}

/// The Lie algebra sl2 with basis `E, H, F` (all degrees zero):
/// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
pub fn sl2() -> GradedLieAlgebra {
    lie(
        vec![("E", 0), ("H", 0), ("F", 0)],
        GradingMode::Z,
        vec![
            ((0, 1), vec![(0, -2)]), // [E,H] = -2E
            ((0, 2), vec![(1, 1)]),  // [E,F] = H
            ((1, 2), vec![(2, -2)]), // [H,F] = -2F
        ],
    )
}

/// A two-dimensional Lie superalgebra over Z2: even `X`, odd `theta`,
/// `[theta,theta] = X` and `X` central.
pub fn super1() -> GradedLieAlgebra {
    lie(
        vec![("X", 0), ("theta", 1)],
        GradingMode::Z2,
        vec![((1, 1), vec![(0, 1)])],
    )
}

/// A Z-graded algebra with genuinely different degrees: `D` of degree 0,
/// `theta` of degree 1, `X` of degree 2, with `[D,theta] = theta`,
/// `[D,X] = 2X`, `[theta,theta] = X`.
pub fn graded_heisenberg() -> GradedLieAlgebra {
    lie(
        vec![("D", 0), ("theta", 1), ("X", 2)],
        GradingMode::Z,
        vec![
            ((0, 1), vec![(1, 1)]),
            ((0, 2), vec![(2, 2)]),
            ((1, 1), vec![(2, 1)]),
        ],
    )
}

/// The Lie superalgebra gl(1|1) over Z2 with basis `h1, q, h2, p`
/// (`h1`, `h2` even; `q`, `p` odd): `[h1,q] = q`, `[h1,p] = -p`,
/// `[h2,q] = -q`, `[h2,p] = p`, `[q,p] = h1 + h2`.
pub fn gl11() -> GradedLieAlgebra {
    lie(
        vec![("h1", 0), ("q", 1), ("h2", 0), ("p", 1)],
        GradingMode::Z2,
        vec![
            ((0, 1), vec![(1, 1)]),         // [h1,q] = q
            ((0, 3), vec![(3, -1)]),        // [h1,p] = -p
            ((1, 2), vec![(1, 1)]),         // [q,h2] = q, i.e. [h2,q] = -q
            ((1, 3), vec![(0, 1), (2, 1)]), // [q,p] = h1 + h2
            ((2, 3), vec![(3, 1)]),         // [h2,p] = p
        ],
    )
}

/// The knitted pair from splitting [`sl2`] as `A = span{E,H}`,
/// `B = span{F}`.
pub fn sl2_pair() -> KnitPairLie {
    decompose_lie(&sl2(), &[0, 1], &[2]).expect("sl2 splits along {E,H} / {F}")
}

/// The knitted pair from splitting [`gl11`] as `A = span{h1,q}`,
/// `B = span{h2,p}`; both actions are nonzero.
pub fn gl11_pair() -> KnitPairLie {
    decompose_lie(&gl11(), &[0, 1], &[2, 3]).expect("gl(1|1) splits along {h1,q} / {h2,p}")
}

/// The semidirect pair from splitting [`graded_heisenberg`] as
/// `A = span{D}`, `B = span{theta,X}`; here `beta = 0` and `alpha` is
/// nonzero.
pub fn heisenberg_pair() -> KnitPairLie {
    decompose_lie(&graded_heisenberg(), &[0], &[1, 2])
        .expect("the graded Heisenberg algebra splits along {D} / {theta,X}")
}

/// The cyclic group of order `n` with elements `g0..g{n-1}`,
/// `gi * gj = g{(i+j) mod n}`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs order >= 1");
    let elements = (0..n).map(|i| format!("g{}", i)).collect();
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::new(elements, table, 0).expect("cyclic table is well formed")
}

/// The Klein four-group with elements `e, a, b, ab`.
pub fn klein_four() -> FiniteGroup {
    let elements = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FiniteGroup::new(elements, table, 0).expect("klein table is well formed")
}

/// The symmetric group on `{0..n-1}`, `n <= 4`. Elements are named by
/// one-line notation (`p0123` is the identity of S4) and listed in
/// lexicographic order; the product is composition, `(p*q)(x) = p(q(x))`.
pub fn symmetric(n: usize) -> FiniteGroup {
    assert!((1..=4).contains(&n), "bundled symmetric groups go up to S4");
    let perms = permutations(n);
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let elements = perms
        .iter()
        .map(|p| {
            let digits: String = p.iter().map(|d| d.to_string()).collect();
            format!("p{}", digits)
        })
        .collect();
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let comp: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    index_of(&comp)
                })
                .collect()
        })
        .collect();
    FiniteGroup::new(elements, table, 0).expect("symmetric table is well formed")
}

/// The dihedral group of order 8 with rotations `r0..r3` and reflections
/// `s0..s3` (`rk` maps `x` to `x+k`, `sk` maps `x` to `k-x`, mod 4).
pub fn dihedral_8() -> FiniteGroup {
    let elements = (0..4)
        .map(|k| format!("r{}", k))
        .chain((0..4).map(|k| format!("s{}", k)))
        .collect();
    let idx = |rotation: bool, k: i64| -> usize {
        let k = k.rem_euclid(4) as usize;
        if rotation {
            k
        } else {
            4 + k
        }
    };
    let mut table = Vec::new();
    for i in 0..8i64 {
        let mut row = Vec::new();
        for j in 0..8i64 {
            let (ri, ki) = (i < 4, i % 4);
            let (rj, kj) = (j < 4, j % 4);
            let entry = match (ri, rj) {
                (true, true) => idx(true, ki + kj),   // r_i . r_j = r_{i+j}
                (true, false) => idx(false, kj + ki), // r_i . s_j = s_{j+i}
                (false, true) => idx(false, ki - kj), // s_i . r_j = s_{i-j}
                (false, false) => idx(true, ki - kj), // s_i . s_j = r_{i-j}
            };
            row.push(entry);
        }
        table.push(row);
    }
    FiniteGroup::new(elements, table, 0).expect("dihedral table is well formed")
}

fn selection_by_names(group: &FiniteGroup, names: &[&str]) -> Result<SubgroupSelection, Error> {
    let indices = names
        .iter()
        .map(|n| group.index_of(n))
        .collect::<Result<Vec<_>, _>>()?;
    SubgroupSelection::new(group.clone(), indices)
}

/// The exact factorization of S3 into `A = <(01)>` and `B = <(012)>`,
/// as subgroup selections.
pub fn s3_factorization() -> (FiniteGroup, SubgroupSelection, SubgroupSelection) {
    let s3 = symmetric(3);
    let a = selection_by_names(&s3, &["p012", "p102"]).unwrap();
    let b = selection_by_names(&s3, &["p012", "p120", "p201"]).unwrap();
    (s3, a, b)
}

/// The exact factorization of S4 into the cyclic group generated by the
/// 4-cycle `p1230` and the copy of S3 fixing the point 3.
pub fn s4_factorization() -> (FiniteGroup, SubgroupSelection, SubgroupSelection) {
    let s4 = symmetric(4);
    let a = selection_by_names(&s4, &["p0123", "p1230", "p2301", "p3012"]).unwrap();
    let b = selection_by_names(
        &s4,
        &["p0123", "p0213", "p1023", "p1203", "p2013", "p2103"],
    )
    .unwrap();
    (s4, a, b)
}

/// The knitted action pair of the S3 factorization; `alpha` is the
/// identity action because `B` is normal.
pub fn s3_pair() -> KnitPairGroup {
    let (s3, a, b) = s3_factorization();
    decompose_group(&s3, &a, &b).expect("S3 = A.B is an exact factorization")
}

/// The knitted action pair of the S4 factorization; a proper knit where
/// neither action is trivial.
pub fn s4_pair() -> KnitPairGroup {
    let (s4, a, b) = s4_factorization();
    decompose_group(&s4, &a, &b).expect("S4 = A.B is an exact factorization")
}
