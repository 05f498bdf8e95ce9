//! Integration tests for the group side: a raw function-space oracle for the
//! knitted-action enumerator, product closure with embedded factors, the
//! normality degenerations, and the equivalence between the quadruple
//! equations and the assembled homomorphism check.

use knit_core::catalog;
use knit_core::{
    are_isomorphic, assemble_group_hom, check_group_quadruple, enumerate_knit_pairs,
    extract_group_quadruple, split_pair_map, FiniteGroup, GroupHomQuadruple, GroupMap,
    KnitPairGroup, SubgroupSelection,
};

/// Enumerates knitted pairs for (C2, C3) the dumb way: all 2^6 * 3^6 = 46656
/// raw `(alpha, beta)` tables, filtered through `verify_knit_actions` alone.
/// The backtracking enumerator must return exactly the same set.
#[test]
fn enumerator_agrees_with_raw_function_space_search() {
    let a = catalog::cyclic(2);
    let b = catalog::cyclic(3);
    let (na, nb) = (a.order(), b.order());

    let mut raw = Vec::new();
    let rows = nb * na;
    let mut alpha_flat = vec![0usize; rows];
    let mut beta_flat = vec![0usize; rows];
    loop {
        // next alpha table in lexicographic order
        let unflatten = |flat: &[usize]| {
            (0..nb).map(|r| flat[r * na..(r + 1) * na].to_vec()).collect::<Vec<_>>()
        };
        loop {
            let pair = KnitPairGroup::new(
                a.clone(),
                b.clone(),
                unflatten(&alpha_flat),
                unflatten(&beta_flat),
            )
            .unwrap();
            if pair.verify_knit_actions().passed() {
                raw.push(pair);
            }
            // advance beta (base-3 counter)
            let mut digit = 0;
            while digit < rows {
                beta_flat[digit] += 1;
                if beta_flat[digit] < nb {
                    break;
                }
                beta_flat[digit] = 0;
                digit += 1;
            }
            if digit == rows {
                break;
            }
        }
        // advance alpha (base-2 counter)
        let mut digit = 0;
        while digit < rows {
            alpha_flat[digit] += 1;
            if alpha_flat[digit] < na {
                break;
            }
            alpha_flat[digit] = 0;
            digit += 1;
        }
        if digit == rows {
            break;
        }
    }

    let enumerated = enumerate_knit_pairs(&a, &b, None).unwrap();
    assert!(!enumerated.truncated);
    let key = |p: &KnitPairGroup| (p.alpha().to_vec(), p.beta().to_vec());
    let mut raw_keys: Vec<_> = raw.iter().map(key).collect();
    raw_keys.sort();
    let enum_keys: Vec<_> = enumerated.pairs.iter().map(key).collect();
    assert_eq!(raw_keys, enum_keys, "enumerator must equal the brute-force filter");
}

/// The subgroup of the knit product supported on one factor, as a group.
fn embedded_factor(pair: &KnitPairGroup, product: &FiniteGroup, a_side: bool) -> FiniteGroup {
    let members = if a_side {
        (0..pair.a().order()).map(|i| pair.pair_index(i, pair.b().identity())).collect()
    } else {
        (0..pair.b().order()).map(|j| pair.pair_index(pair.a().identity(), j)).collect()
    };
    SubgroupSelection::new(product.clone(), members).unwrap().subgroup().unwrap()
}

/// Every knitted pair in reach — enumerated, trivial, and decomposition-derived
/// — yields a product that is a group, embeds both factors isomorphically,
/// and satisfies the printed inverse formula on all elements.
#[test]
fn knit_products_are_groups_with_embedded_factors() {
    let mut pairs = enumerate_knit_pairs(&catalog::cyclic(2), &catalog::cyclic(3), None)
        .unwrap()
        .pairs;
    pairs.push(KnitPairGroup::direct(catalog::cyclic(4), catalog::klein_four()));
    pairs.push(catalog::s3_pair());
    pairs.push(catalog::s4_pair());

    for pair in &pairs {
        let product = pair.knit_group_product().unwrap();
        let report = product.verify_group_table();
        assert!(report.passed(), "{report}");

        let embedded_a = embedded_factor(pair, &product, true);
        let embedded_b = embedded_factor(pair, &product, false);
        assert!(are_isomorphic(&embedded_a, pair.a()).unwrap().is_some());
        assert!(are_isomorphic(&embedded_b, pair.b()).unwrap().is_some());

        // (a,b)^-1 = (alpha_{b^-1}(a^-1), beta^{a^-1}(b^-1))
        for i in 0..pair.a().order() {
            for j in 0..pair.b().order() {
                let ai = pair.a().inverse(i).unwrap();
                let bj = pair.b().inverse(j).unwrap();
                let expected = pair.pair_index(pair.alpha()[bj][ai], pair.beta()[bj][ai]);
                assert_eq!(product.inverse(pair.pair_index(i, j)), Some(expected));
            }
        }
    }
}

/// A trivial action on one side makes the other factor normal in the product:
/// `alpha == id` renders `{e} x B` normal, `beta == id` renders `A x {e}`
/// normal. In a proper knit neither embedding is normal.
#[test]
fn trivial_actions_force_normal_embeddings() {
    let normal_side = |pair: &KnitPairGroup, a_side: bool| {
        let product = pair.knit_group_product().unwrap();
        let members = if a_side {
            (0..pair.a().order()).map(|i| pair.pair_index(i, pair.b().identity())).collect()
        } else {
            (0..pair.b().order()).map(|j| pair.pair_index(pair.a().identity(), j)).collect()
        };
        SubgroupSelection::new(product, members).unwrap().is_normal()
    };

    // S3 = <(01)> . <(012)>: alpha is the identity action, so B is normal...
    let s3 = catalog::s3_pair();
    assert!(s3.alpha().iter().all(|row| row.iter().enumerate().all(|(x, &y)| x == y)));
    assert!(normal_side(&s3, false));
    // ...but A = <(01)> is not.
    assert!(!normal_side(&s3, true));

    // D4 split into rotations and a reflection: beta is the identity action,
    // so the rotation subgroup A is normal, while the reflection is not.
    let d4 = catalog::dihedral_8();
    let sel = |names: &[&str]| {
        let members = names.iter().map(|n| d4.index_of(n).unwrap()).collect();
        SubgroupSelection::new(d4.clone(), members).unwrap()
    };
    let rotations = sel(&["r0", "r1", "r2", "r3"]);
    let reflection = sel(&["r0", "s0"]);
    let pair = knit_core::decompose_group(&d4, &rotations, &reflection).unwrap();
    assert!(pair
        .beta()
        .iter()
        .enumerate()
        .all(|(j, row)| row.iter().all(|&img| img == j)));
    assert!(normal_side(&pair, true));
    assert!(!normal_side(&pair, false));

    // the S4 pair is a proper knit: neither embedded factor is normal
    let s4 = catalog::s4_pair();
    assert!(!normal_side(&s4, true));
    assert!(!normal_side(&s4, false));
}

/// Conjugation by the transposition (2 3) — an element lying in neither
/// factor — written as a pair map on the knit product of the S4 pair.
fn s4_conjugation_map() -> (KnitPairGroup, GroupMap) {
    let s4 = catalog::symmetric(4);
    let pair = catalog::s4_pair();
    let product = pair.knit_group_product().unwrap();

    let in_s4 = |g: &FiniteGroup, i: usize| s4.index_of(g.name(i)).unwrap();
    let mut to_pair = vec![usize::MAX; s4.order()];
    for i in 0..pair.a().order() {
        for j in 0..pair.b().order() {
            let g = s4.mul(in_s4(pair.a(), i), in_s4(pair.b(), j));
            to_pair[g] = pair.pair_index(i, j);
        }
    }
    let t = s4.index_of("p0132").unwrap();
    let t_inv = s4.inverse(t).unwrap();
    let nb = pair.b().order();
    let images = (0..product.order())
        .map(|p| {
            let g = s4.mul(in_s4(pair.a(), p / nb), in_s4(pair.b(), p % nb));
            to_pair[s4.mul(s4.mul(t, g), t_inv)]
        })
        .collect();
    let conj = GroupMap::new(product.clone(), product, images).unwrap();
    (pair, conj)
}

/// The four-equation criterion accepts a quadruple exactly when the
/// assembled pair map is a homomorphism of the knit products, across passing
/// and corrupted fixtures.
#[test]
fn quadruple_criterion_matches_assembled_hom() {
    let verdicts = |src: &KnitPairGroup, dst: &KnitPairGroup, q: &GroupHomQuadruple| {
        let by_equations = check_group_quadruple(src, dst, q, false).unwrap().passed();
        let (_, report) = assemble_group_hom(src, dst, q).unwrap();
        (by_equations, report.passed())
    };

    let s3 = catalog::s3_pair();
    let s4 = catalog::s4_pair();
    assert_eq!(verdicts(&s3, &s3, &GroupHomQuadruple::identity(&s3)), (true, true));
    assert_eq!(verdicts(&s4, &s4, &GroupHomQuadruple::identity(&s4)), (true, true));

    // conjugation gives a passing quadruple with all four components nontrivial
    let (pair, conj) = s4_conjugation_map();
    assert!(conj.is_group_hom().passed());
    let (phi1, phi2) = split_pair_map(&pair, &conj).unwrap();
    let q = extract_group_quadruple(&pair, &phi1, &phi2).unwrap();
    assert!(q.phi().images().iter().any(|&x| x != pair.a().identity()));
    assert!(q.psi().images().iter().any(|&x| x != pair.b().identity()));
    assert_eq!(verdicts(&pair, &pair, &q), (true, true));

    // corrupted variants must flip both verdicts in the same way
    let corrupt = |m: &GroupMap, at: usize, to: usize| {
        let mut images = m.images().to_vec();
        images[at] = to;
        GroupMap::new(m.source().clone(), m.target().clone(), images).unwrap()
    };
    let broken_psi =
        GroupHomQuadruple::new(q.f().clone(), q.g().clone(), q.phi().clone(), corrupt(q.psi(), 1, 2))
            .unwrap();
    assert_eq!(verdicts(&pair, &pair, &broken_psi), (false, false));

    let broken_phi =
        GroupHomQuadruple::new(q.f().clone(), q.g().clone(), corrupt(q.phi(), 0, 1), q.psi().clone())
            .unwrap();
    assert_eq!(verdicts(&pair, &pair, &broken_phi), (false, false));

    let id = GroupHomQuadruple::identity(&s4);
    let broken_f =
        GroupHomQuadruple::new(corrupt(id.f(), 1, 2), id.g().clone(), id.phi().clone(), id.psi().clone())
            .unwrap();
    assert_eq!(verdicts(&s4, &s4, &broken_f), (false, false));

    let broken_g =
        GroupHomQuadruple::new(id.f().clone(), corrupt(id.g(), 1, 0), id.phi().clone(), id.psi().clone())
            .unwrap();
    assert_eq!(verdicts(&s4, &s4, &broken_g), (false, false));
}

/// Assembling a quadruple and extracting it back are mutually inverse on
/// passing fixtures.
#[test]
fn assemble_and_extract_are_inverse() {
    let (pair, conj) = s4_conjugation_map();
    let (phi1, phi2) = split_pair_map(&pair, &conj).unwrap();
    let q = extract_group_quadruple(&pair, &phi1, &phi2).unwrap();

    // assemble . extract == original map
    let (assembled, report) = assemble_group_hom(&pair, &pair, &q).unwrap();
    assert!(report.passed());
    assert_eq!(assembled.images(), conj.images());

    // extract . assemble == original quadruple
    let (r1, r2) = split_pair_map(&pair, &assembled).unwrap();
    assert_eq!(extract_group_quadruple(&pair, &r1, &r2).unwrap(), q);

    // and the identity quadruple corresponds to the identity map
    let id_q = GroupHomQuadruple::identity(&pair);
    let (id_map, report) = assemble_group_hom(&pair, &pair, &id_q).unwrap();
    assert!(report.passed());
    let n = id_map.source().order();
    assert_eq!(id_map.images(), (0..n).collect::<Vec<_>>().as_slice());
}

/// The fixed-point identities `alpha_b(e) = e` and `beta^a(e) = e` are not
/// axioms of the verifier, yet they hold in every valid enumerated pair.
#[test]
fn derived_identities_follow_from_the_axioms() {
    let cases = [
        (catalog::cyclic(2), catalog::cyclic(2)),
        (catalog::cyclic(2), catalog::cyclic(3)),
        (catalog::cyclic(3), catalog::cyclic(2)),
        (catalog::cyclic(2), catalog::klein_four()),
    ];
    for (a, b) in cases {
        let (ea, eb) = (a.identity(), b.identity());
        for pair in enumerate_knit_pairs(&a, &b, None).unwrap().pairs {
            assert!(pair.verify_knit_actions().passed());
            for j in 0..pair.b().order() {
                assert_eq!(pair.alpha()[j][ea], ea);
            }
            for i in 0..pair.a().order() {
                assert_eq!(pair.beta()[eb][i], eb);
            }
        }
    }
}
