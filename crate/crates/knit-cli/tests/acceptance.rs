//! Acceptance suite: one test (and one printed pass line) per criterion.
//!
//! Criteria 1-4 exercise the graded Lie side: products of knitted pairs
//! close into graded Lie algebras, decomposition recovers the actions and
//! reassembles to the original algebra, the quadruple equations are
//! equivalent to the assembled map being a homomorphism, and semidirect
//! degenerations behave as expected. Criteria 5-8 mirror this for finite
//! groups, and criterion 9 pins the CLI to byte-deterministic output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use knit_cli::manifest::{self, Body};
use knit_core::catalog;
use knit_core::{
    are_isomorphic, assemble_group_hom, assemble_lie_hom, check_group_quadruple,
    check_lie_quadruple, decompose_group, decompose_lie, enumerate_knit_pairs,
    extract_group_quadruple, is_graded_derivation, is_graded_lie_hom, split_pair_map,
    FiniteGroup, GradedBasis, GradedLieAlgebra, GradedLinearMap, GradedVector, GroupHomQuadruple,
    GroupMap, KnitPairGroup, KnitPairLie, LieHomQuadruple, Rational, SubgroupSelection,
};

fn pass(n: usize, what: &str) {
    println!("criterion {n}: pass - {what}");
}

// ---------------------------------------------------------------------------
// shared helpers

/// A linear map given by columns of (target name, integer coefficient)
/// pairs.
fn lin(src: &GradedBasis, dst: &GradedBasis, cols: &[&[(&str, i64)]]) -> GradedLinearMap {
    assert_eq!(cols.len(), src.len());
    let columns = cols
        .iter()
        .map(|terms| {
            GradedVector::from_terms(
                terms.iter().map(|(n, c)| (dst.index_of(n).unwrap(), Rational::from_integer(*c))),
            )
        })
        .collect();
    GradedLinearMap::new(src.clone(), dst.clone(), 0, columns).unwrap()
}

/// Whether the span of `members` absorbs brackets with the whole algebra.
fn span_is_ideal(alg: &GradedLieAlgebra, members: &[usize]) -> bool {
    (0..alg.dim()).all(|i| {
        members.iter().all(|&j| {
            alg.bracket_basis(i, j).iter().all(|(k, _)| members.contains(&k))
        })
    })
}

/// Quadruple-equation verdict vs. is-the-assembled-map-a-homomorphism
/// verdict.
fn lie_verdicts(src: &KnitPairLie, dst: &KnitPairLie, q: &LieHomQuadruple) -> (bool, bool) {
    let by_equations = check_lie_quadruple(src, dst, q).unwrap().passed();
    let map = assemble_lie_hom(src, dst, q).unwrap();
    let sp = src.knit_product_unchecked().unwrap();
    let dp = dst.knit_product_unchecked().unwrap();
    let by_map = is_graded_lie_hom(&sp, &dp, &map).unwrap().passed();
    (by_equations, by_map)
}

fn group_verdicts(src: &KnitPairGroup, dst: &KnitPairGroup, q: &GroupHomQuadruple) -> (bool, bool) {
    let by_equations = check_group_quadruple(src, dst, q, false).unwrap().passed();
    let (_, report) = assemble_group_hom(src, dst, q).unwrap();
    (by_equations, report.passed())
}

fn fixture_path(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn parse_fixture(name: &str) -> manifest::Document {
    let text = fs::read_to_string(fixture_path(name)).unwrap();
    manifest::parse(&text).unwrap()
}

fn fixture_lie_quad(name: &str, src: &KnitPairLie, dst: &KnitPairLie) -> LieHomQuadruple {
    match parse_fixture(name).body {
        Body::QuadLie(d) => manifest::resolve_lie_quadruple(&d, src, dst).unwrap(),
        other => panic!("{name}: expected a lie quadruple, found {other:?}"),
    }
}

fn fixture_group_quad(name: &str, src: &KnitPairGroup, dst: &KnitPairGroup) -> GroupHomQuadruple {
    match parse_fixture(name).body {
        Body::QuadGroup(d) => manifest::resolve_group_quadruple(&d, src, dst).unwrap(),
        other => panic!("{name}: expected a group quadruple, found {other:?}"),
    }
}

// ---------------------------------------------------------------------------
// criterion 1: knit products of valid lie pairs close into graded Lie
// algebras

#[test]
fn criterion_1_lie_knit_products_close() {
    let pairs = [
        ("split sl2", catalog::sl2_pair()),
        ("split gl(1|1) over Z2", catalog::gl11_pair()),
        (
            "zero actions on sl2 + heisenberg",
            KnitPairLie::zero(catalog::sl2(), catalog::graded_heisenberg()).unwrap(),
        ),
        ("semidirect heisenberg (beta = 0)", catalog::heisenberg_pair()),
    ];
    for (what, pair) in pairs {
        assert!(pair.verify_knit_pair().passed(), "{what}: pair must verify");
        let product = pair.knit_product().unwrap();
        let report = product.verify_graded_lie();
        assert!(report.passed(), "{what}: product fails the graded Lie laws: {report}");
        assert_eq!(product.dim(), pair.a().dim() + pair.b().dim(), "{what}");
    }
    pass(1, "knit products of valid lie pairs are graded Lie algebras");
}

// ---------------------------------------------------------------------------
// criterion 2: decomposing sl2 along {E,H} / {F} yields the expected
// actions and knits back to sl2 via a bijective homomorphism

#[test]
fn criterion_2_sl2_decomposition_roundtrip() {
    let sl2 = catalog::sl2();
    let pair = decompose_lie(&sl2, &[0, 1], &[2]).unwrap();

    // A basis [E, H], B basis [F]
    let f = GradedVector::basis(0);
    let minus_two_f = GradedVector::term(0, Rational::from_integer(-2));
    assert_eq!(pair.alpha()[1].apply(&f), minus_two_f, "alpha(H)F = -2F");
    assert!(pair.alpha()[0].apply(&f).is_zero(), "alpha(E)F = 0");
    let minus_h = GradedVector::term(1, Rational::from_integer(-1));
    assert_eq!(pair.beta()[0].apply(&GradedVector::basis(0)), minus_h, "beta(F)E = -H");
    assert!(pair.beta()[0].apply(&GradedVector::basis(1)).is_zero(), "beta(F)H = 0");

    assert!(pair.verify_knit_pair().passed());

    // knitting the pair back reproduces sl2 itself, so the summation map
    // (a, b) -> a + b is the identity on basis vectors: a bijective
    // homomorphism
    let product = pair.knit_product().unwrap();
    assert_eq!(product, sl2);
    let sum = GradedLinearMap::identity(sl2.basis());
    assert!(is_graded_lie_hom(&product, &sl2, &sum).unwrap().passed());
    assert!((0..sl2.dim()).all(|j| *sum.column(j) == GradedVector::basis(j)));
    pass(2, "sl2 splits along {E,H}/{F} and knits back to itself");
}

// ---------------------------------------------------------------------------
// criterion 3: the lie quadruple equations hold exactly when the assembled
// map is a homomorphism of the knit products

#[test]
fn criterion_3_lie_quadruple_equivalence() {
    let sl2 = catalog::sl2_pair();
    let heis = catalog::heisenberg_pair();
    let (a, b) = (sl2.a().basis().clone(), sl2.b().basis().clone());

    let passing = [
        ("identity", &sl2, fixture_lie_quad("sl2-id.quad", &sl2, &sl2)),
        ("sign automorphism", &sl2, fixture_lie_quad("sl2-sigma.quad", &sl2, &sl2)),
        ("zero map into the heisenberg pair", &heis, LieHomQuadruple::zero(&sl2, &heis)),
    ];
    for (what, dst, q) in &passing {
        assert_eq!(lie_verdicts(&sl2, dst, q), (true, true), "{what}");
    }

    let zero_ab = lin(&a, &b, &[&[], &[]]);
    let zero_ba = lin(&b, &a, &[&[]]);
    let corrupted = [
        (
            "automorphism with a flipped sign in psi",
            fixture_lie_quad("sl2-sigma-bad.quad", &sl2, &sl2),
        ),
        (
            "scaling unbalanced between the factors",
            LieHomQuadruple::new(
                lin(&a, &a, &[&[("E", 2)], &[("H", 1)]]),
                lin(&b, &b, &[&[("F", 1)]]),
                zero_ab.clone(),
                zero_ba.clone(),
            )
            .unwrap(),
        ),
        (
            "projection onto the first factor",
            LieHomQuadruple::new(
                GradedLinearMap::identity(&a),
                lin(&b, &b, &[&[]]),
                zero_ab.clone(),
                zero_ba.clone(),
            )
            .unwrap(),
        ),
        (
            "identity smeared by a nonzero phi",
            LieHomQuadruple::new(
                GradedLinearMap::identity(&a),
                GradedLinearMap::identity(&b),
                lin(&a, &b, &[&[("F", 1)], &[]]),
                zero_ba.clone(),
            )
            .unwrap(),
        ),
    ];
    for (what, q) in &corrupted {
        assert_eq!(lie_verdicts(&sl2, &sl2, q), (false, false), "{what}");
    }
    pass(3, "lie quadruple equations match assembled-homomorphism verdicts");
}

// ---------------------------------------------------------------------------
// criterion 4: semidirect degeneration (beta = 0) makes each alpha(a) a
// derivation and the B summand an ideal; the A summand is not an ideal
// when alpha is nonzero

#[test]
fn criterion_4_semidirect_degeneration() {
    let pair = catalog::heisenberg_pair();
    assert!(pair.beta().iter().all(GradedLinearMap::is_zero), "beta vanishes");
    assert!(pair.alpha().iter().any(|m| !m.is_zero()), "alpha is nonzero");
    for (i, action) in pair.alpha().iter().enumerate() {
        let report = is_graded_derivation(pair.b(), action).unwrap();
        assert!(report.passed(), "alpha(a_{i}) must be a derivation of B: {report}");
    }

    let product = pair.knit_product().unwrap();
    let na = pair.a().dim();
    let a_span: Vec<usize> = (0..na).collect();
    let b_span: Vec<usize> = (na..product.dim()).collect();
    assert!(span_is_ideal(&product, &b_span), "B sits inside the product as an ideal");
    assert!(
        !span_is_ideal(&product, &a_span),
        "A is not an ideal of the product while alpha acts nontrivially"
    );

    // with both actions zero the product is a direct sum and both summands
    // are ideals
    let zero = KnitPairLie::zero(catalog::sl2(), catalog::graded_heisenberg()).unwrap();
    let direct_sum = zero.knit_product().unwrap();
    let na = zero.a().dim();
    assert!(span_is_ideal(&direct_sum, &(0..na).collect::<Vec<_>>()));
    assert!(span_is_ideal(&direct_sum, &(na..direct_sum.dim()).collect::<Vec<_>>()));
    pass(4, "beta = 0 degenerates to a semidirect product with B an ideal");
}

// ---------------------------------------------------------------------------
// criterion 5: knit products of group pairs are groups containing both
// factors, with the knitted inverse formula

fn embedded_factor(pair: &KnitPairGroup, product: &FiniteGroup, first: bool) -> FiniteGroup {
    let (ea, eb) = (pair.a().identity(), pair.b().identity());
    let members: Vec<usize> = if first {
        (0..pair.a().order()).map(|i| pair.pair_index(i, eb)).collect()
    } else {
        (0..pair.b().order()).map(|j| pair.pair_index(ea, j)).collect()
    };
    SubgroupSelection::new(product.clone(), members).unwrap().subgroup().unwrap()
}

#[test]
fn criterion_5_group_knit_products_close() {
    let c2 = catalog::cyclic(2);
    let c3 = catalog::cyclic(3);
    let mut pairs = enumerate_knit_pairs(&c2, &c3, None).unwrap().pairs;
    pairs.push(KnitPairGroup::direct(catalog::cyclic(4), catalog::klein_four()));
    pairs.push(catalog::s4_pair());

    for (which, pair) in pairs.iter().enumerate() {
        let product = pair.knit_group_product().unwrap();
        assert!(product.verify_group_table().passed(), "pair {which}: product is a group");

        let sub_a = embedded_factor(pair, &product, true);
        let sub_b = embedded_factor(pair, &product, false);
        assert!(are_isomorphic(&sub_a, pair.a()).unwrap().is_some(), "pair {which}: A embeds");
        assert!(are_isomorphic(&sub_b, pair.b()).unwrap().is_some(), "pair {which}: B embeds");

        for i in 0..pair.a().order() {
            for j in 0..pair.b().order() {
                let ai = pair.a().inverse(i).unwrap();
                let bj = pair.b().inverse(j).unwrap();
                let expected = pair.pair_index(pair.alpha()[bj][ai], pair.beta()[bj][ai]);
                assert_eq!(
                    product.inverse(pair.pair_index(i, j)),
                    Some(expected),
                    "pair {which}: inverse of ({i},{j})"
                );
            }
        }
    }
    pass(5, "group knit products are groups with embedded factors");
}

// ---------------------------------------------------------------------------
// criterion 6: factorizing S3 and S4 along standard subgroup pairs gives
// knitted actions that reconstruct the groups

#[test]
fn criterion_6_group_decomposition_roundtrip() {
    let (s3, a_sel, b_sel) = catalog::s3_factorization();
    let pair = decompose_group(&s3, &a_sel, &b_sel).unwrap();
    // the cyclic factor is normal in S3, so the action of B on A is trivial
    let identity_row: Vec<usize> = (0..pair.a().order()).collect();
    assert!(pair.alpha().iter().all(|row| *row == identity_row), "alpha is the identity");
    let recon = pair.knit_group_product().unwrap();
    assert!(are_isomorphic(&recon, &s3).unwrap().is_some(), "the product rebuilds S3");

    let (s4, a_sel, b_sel) = catalog::s4_factorization();
    let pair = decompose_group(&s4, &a_sel, &b_sel).unwrap();
    // neither subgroup is normal: both actions are nontrivial
    assert!(pair.alpha().iter().any(|row| *row != (0..pair.a().order()).collect::<Vec<_>>()));
    assert!((0..pair.b().order())
        .any(|j| (0..pair.a().order()).any(|i| pair.beta()[j][i] != j)));
    let recon = pair.knit_group_product().unwrap();
    assert!(are_isomorphic(&recon, &s4).unwrap().is_some(), "the product rebuilds S4");
    pass(6, "S3 and S4 factorizations decompose and reconstruct");
}

// ---------------------------------------------------------------------------
// criterion 7: enumeration finds exactly the known knit structures on
// small factor pairs

#[test]
fn criterion_7_enumeration_counts() {
    let c2 = catalog::cyclic(2);
    let c3 = catalog::cyclic(3);

    for (a, b, what) in [(&c2, &c3, "(C2, C3)"), (&c3, &c2, "(C3, C2)")] {
        let pairs = enumerate_knit_pairs(a, b, None).unwrap().pairs;
        assert_eq!(pairs.len(), 2, "{what}: two knit structures");
        let mut cyclic_count = 0;
        let mut symmetric_count = 0;
        for pair in &pairs {
            let product = pair.knit_group_product().unwrap();
            if are_isomorphic(&product, &catalog::cyclic(6)).unwrap().is_some() {
                cyclic_count += 1;
            }
            if are_isomorphic(&product, &catalog::symmetric(3)).unwrap().is_some() {
                symmetric_count += 1;
            }
        }
        assert_eq!((cyclic_count, symmetric_count), (1, 1), "{what}: products are C6 and S3");
    }

    let pairs = enumerate_knit_pairs(&c2, &c2, None).unwrap().pairs;
    assert_eq!(pairs.len(), 1, "(C2, C2): a single knit structure");
    let product = pairs[0].knit_group_product().unwrap();
    assert!(are_isomorphic(&product, &catalog::klein_four()).unwrap().is_some());
    pass(7, "enumeration counts match the classification of small products");
}

// ---------------------------------------------------------------------------
// criterion 8: the group quadruple equations hold exactly when the
// assembled pair map is a homomorphism, and extraction inverts assembly

fn with_image(m: &GroupMap, at: usize, image: usize) -> GroupMap {
    let mut images = m.images().to_vec();
    images[at] = image;
    GroupMap::new(m.source().clone(), m.target().clone(), images).unwrap()
}

#[test]
fn criterion_8_group_quadruple_equivalence() {
    let s3 = catalog::s3_pair();
    let s4 = catalog::s4_pair();
    let id3 = GroupHomQuadruple::identity(&s3);
    let id4 = GroupHomQuadruple::identity(&s4);
    let conj = fixture_group_quad("s4-conj.quad", &s4, &s4);

    assert_eq!(group_verdicts(&s3, &s3, &id3), (true, true), "identity on the S3 pair");
    assert_eq!(group_verdicts(&s4, &s4, &id4), (true, true), "identity on the S4 pair");
    assert_eq!(group_verdicts(&s4, &s4, &conj), (true, true), "conjugation quadruple");

    let corrupted = [
        (
            "identity with f broken",
            GroupHomQuadruple::new(
                with_image(id4.f(), 1, 0),
                id4.g().clone(),
                id4.phi().clone(),
                id4.psi().clone(),
            )
            .unwrap(),
        ),
        (
            "identity with g broken",
            GroupHomQuadruple::new(
                id4.f().clone(),
                with_image(id4.g(), 1, 0),
                id4.phi().clone(),
                id4.psi().clone(),
            )
            .unwrap(),
        ),
        (
            "conjugation with phi broken",
            GroupHomQuadruple::new(
                conj.f().clone(),
                conj.g().clone(),
                with_image(conj.phi(), 1, 0),
                conj.psi().clone(),
            )
            .unwrap(),
        ),
        (
            "conjugation with psi broken",
            fixture_group_quad("s4-conj-bad.quad", &s4, &s4),
        ),
    ];
    for (what, q) in &corrupted {
        assert_eq!(group_verdicts(&s4, &s4, q), (false, false), "{what}");
    }

    // extraction and assembly invert each other
    let (map, report) = assemble_group_hom(&s4, &s4, &conj).unwrap();
    assert!(report.passed());
    let (phi1, phi2) = split_pair_map(&s4, &map).unwrap();
    let extracted = extract_group_quadruple(&s4, &phi1, &phi2).unwrap();
    assert_eq!(extracted, conj, "extract(assemble(q)) = q");
    let (reassembled, _) = assemble_group_hom(&s4, &s4, &extracted).unwrap();
    assert_eq!(reassembled.images(), map.images(), "assemble(extract(map)) = map");

    let (id_map, _) = assemble_group_hom(&s4, &s4, &id4).unwrap();
    let n = id_map.source().order();
    assert_eq!(id_map.images(), (0..n).collect::<Vec<_>>().as_slice());
    pass(8, "group quadruple equations match assembled-homomorphism verdicts");
}

// ---------------------------------------------------------------------------
// criterion 9: every subcommand is byte-deterministic on every fixture

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knit"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_9_cli_determinism() {
    let matrix: Vec<Vec<&str>> = vec![
        vec!["lie", "verify", "fixtures/sl2.alg"],
        vec!["lie", "verify", "fixtures/super1.alg"],
        vec!["lie", "verify", "fixtures/heis.alg"],
        vec!["lie", "verify", "fixtures/gl11.alg"],
        vec!["lie", "verify", "fixtures/broken-jacobi.alg"],
        vec!["lie", "verify", "fixtures/sl2.knit"],
        vec!["lie", "verify", "fixtures/gl11.knit"],
        vec!["lie", "verify", "fixtures/heis.knit"],
        vec!["lie", "verify", "fixtures/broken-sl2-pair.knit"],
        vec!["lie", "verify", "fixtures/sl2.alg", "--report-format", "json"],
        vec!["lie", "knit", "fixtures/sl2.knit"],
        vec!["lie", "knit", "fixtures/gl11.knit"],
        vec!["lie", "knit", "fixtures/heis.knit"],
        vec!["lie", "knit", "fixtures/broken-sl2-pair.knit"],
        vec!["lie", "knit", "fixtures/broken-sl2-pair.knit", "--allow-invalid"],
        vec!["lie", "decompose", "fixtures/sl2.alg", "--a", "E,H", "--b", "F"],
        vec!["lie", "decompose", "fixtures/gl11.alg", "--a", "h1,q", "--b", "h2,p"],
        vec!["lie", "decompose", "fixtures/heis.alg", "--a", "D", "--b", "theta,X"],
        vec!["lie", "quad-check", "fixtures/sl2.knit", "fixtures/sl2.knit", "fixtures/sl2-id.quad"],
        vec![
            "lie",
            "quad-check",
            "fixtures/sl2.knit",
            "fixtures/sl2.knit",
            "fixtures/sl2-sigma.quad",
        ],
        vec![
            "lie",
            "quad-check",
            "fixtures/sl2.knit",
            "fixtures/sl2.knit",
            "fixtures/sl2-sigma-bad.quad",
        ],
        vec![
            "lie",
            "quad-check",
            "fixtures/sl2.knit",
            "fixtures/heis.knit",
            "fixtures/zero.quad",
        ],
        vec![
            "lie",
            "quad-check",
            "fixtures/sl2.knit",
            "fixtures/sl2.knit",
            "fixtures/sl2-sigma.quad",
            "--report-format",
            "json",
        ],
        vec![
            "lie",
            "hom-assemble",
            "fixtures/sl2.knit",
            "fixtures/sl2.knit",
            "fixtures/sl2-sigma.quad",
        ],
        vec![
            "lie",
            "hom-assemble",
            "fixtures/sl2.knit",
            "fixtures/sl2.knit",
            "fixtures/sl2-id.quad",
        ],
        vec!["group", "verify", "fixtures/c2.grp"],
        vec!["group", "verify", "fixtures/c3.grp"],
        vec!["group", "verify", "fixtures/c6.grp"],
        vec!["group", "verify", "fixtures/v4.grp"],
        vec!["group", "verify", "fixtures/s3.grp"],
        vec!["group", "verify", "fixtures/d4.grp"],
        vec!["group", "verify", "fixtures/s4.grp"],
        vec!["group", "verify", "fixtures/broken-c6.grp"],
        vec!["group", "verify", "fixtures/s3.knit"],
        vec!["group", "verify", "fixtures/s4.knit"],
        vec!["group", "verify", "fixtures/broken-pair.knit"],
        vec!["group", "verify", "fixtures/broken-pair.knit", "--report-format", "json"],
        vec!["group", "knit", "fixtures/s3.knit"],
        vec!["group", "knit", "fixtures/s4.knit"],
        vec!["group", "knit", "fixtures/broken-pair.knit"],
        vec!["group", "knit", "fixtures/broken-pair.knit", "--allow-invalid"],
        vec!["group", "decompose", "fixtures/s3.grp", "--a", "p012,p102", "--b", "p012,p120,p201"],
        vec![
            "group",
            "decompose",
            "fixtures/s4.grp",
            "--a",
            "p0123,p1230,p2301,p3012",
            "--b",
            "p0123,p0213,p1023,p1203,p2013,p2103",
        ],
        vec![
            "group",
            "quad-check",
            "fixtures/s4.knit",
            "fixtures/s4.knit",
            "fixtures/s4-conj.quad",
        ],
        vec![
            "group",
            "quad-check",
            "fixtures/s4.knit",
            "fixtures/s4.knit",
            "fixtures/s4-conj-bad.quad",
        ],
        vec![
            "group",
            "quad-check",
            "fixtures/s4.knit",
            "fixtures/s4.knit",
            "fixtures/s4-conj.quad",
            "--assume-homs",
        ],
        vec![
            "group",
            "hom-assemble",
            "fixtures/s4.knit",
            "fixtures/s4.knit",
            "fixtures/s4-conj.quad",
        ],
        vec!["group", "enumerate", "fixtures/c2.grp", "fixtures/c3.grp"],
        vec!["group", "enumerate", "fixtures/c3.grp", "fixtures/c2.grp"],
        vec!["group", "enumerate", "fixtures/c2.grp", "fixtures/c2.grp"],
        vec!["group", "enumerate", "fixtures/c2.grp", "fixtures/c3.grp", "--limit", "1"],
        vec![
            "group",
            "enumerate",
            "fixtures/c2.grp",
            "fixtures/c3.grp",
            "--report-format",
            "json",
        ],
    ];

    for args in &matrix {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}: stdout must not vary");
        assert_eq!(first.stderr, second.stderr, "{args:?}: stderr must not vary");
        assert_eq!(first.status.code(), second.status.code(), "{args:?}: exit code");
        // outputs must parse back to what they emit (idempotent emission)
        let text = String::from_utf8(first.stdout).unwrap();
        for chunk in text.split("\n\n").filter(|c| !c.trim().is_empty()) {
            let doc = manifest::parse(chunk).unwrap_or_else(|e| panic!("{args:?}: {e}"));
            let mut emitted = manifest::emit(&doc);
            if !chunk.ends_with('\n') {
                emitted.truncate(emitted.len() - 1);
            }
            assert_eq!(emitted, chunk, "{args:?}: emitted manifest must be canonical");
        }
    }
    pass(9, "every subcommand is byte-deterministic on the fixture corpus");
}
