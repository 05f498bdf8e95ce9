//! Knitted actions of finite groups, the knit (Zappa-Szep) product,
//! decomposition of exact factorizations, quadruple criteria for maps
//! between knit products, and exhaustive enumeration of knitted pairs.

use crate::error::Error;
use crate::finite_group::{generating_sequence, FiniteGroup, GroupMap, SubgroupSelection};
use crate::report::VerificationReport;

/// A candidate knitted pair of actions for two finite groups `A` and `B`:
/// `alpha[b][a]` is the left action of `b` on `a`, and `beta[b][a]` is the
/// right action of `a` on `b` (the map `b -> beta[b][a]` at fixed `a`).
///
/// Both tables are `|B|` rows by `|A|` columns. Construction checks shape
/// only; the four knitting conditions are answered by
/// [`KnitPairGroup::verify_knit_actions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnitPairGroup {
    a: FiniteGroup,
    b: FiniteGroup,
    alpha: Vec<Vec<usize>>,
    beta: Vec<Vec<usize>>,
}

impl KnitPairGroup {
    pub fn new(
        a: FiniteGroup,
        b: FiniteGroup,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
    ) -> Result<Self, Error> {
        for (which, table, entry_range) in
            [("alpha", &alpha, a.order()), ("beta", &beta, b.order())]
        {
            if table.len() != b.order() {
                return Err(Error::ShapeMismatch(format!(
                    "{} {} rows for a B factor of order {}",
                    table.len(),
                    which,
                    b.order()
                )));
            }
            for (row, entries) in table.iter().enumerate() {
                if entries.len() != a.order() {
                    return Err(Error::RaggedTable {
                        row,
                        len: entries.len(),
                        expected: a.order(),
                    });
                }
                for &entry in entries {
                    if entry >= entry_range {
                        return Err(Error::IndexOutOfRange { index: entry, size: entry_range });
                    }
                }
            }
        }
        Ok(KnitPairGroup { a, b, alpha, beta })
    }

    /// The pair with both actions trivial (a direct-product pair).
    pub fn direct(a: FiniteGroup, b: FiniteGroup) -> Self {
        let alpha = vec![(0..a.order()).collect(); b.order()];
        let beta = (0..b.order()).map(|j| vec![j; a.order()]).collect();
        KnitPairGroup { a, b, alpha, beta }
    }

    pub fn a(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn b(&self) -> &FiniteGroup {
        &self.b
    }

    pub fn alpha(&self) -> &[Vec<usize>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<usize>] {
        &self.beta
    }

    /// Number of elements of the knit product.
    pub fn pair_count(&self) -> usize {
        self.a.order() * self.b.order()
    }

    /// Index of the pair `(a_i, b_j)` in the knit product's element order
    /// (lexicographic by A-index, then B-index).
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.b.order() + j
    }

    /// Rendered name of the pair `(a_i, b_j)`.
    pub fn pair_name(&self, i: usize, j: usize) -> String {
        format!("{}|{}", self.a.name(i), self.b.name(j))
    }

    /// Checks the four knitting conditions:
    ///
    /// - `(1)` `alpha` is a left action by bijections: the identity of `B`
    ///   acts trivially, acting is a homomorphism from `B`, and every
    ///   `alpha[b]` row is a permutation of `A`;
    /// - `(2)` `beta` is a right action by bijections: the identity of `A`
    ///   acts trivially, acting is an anti-homomorphism from `A`, and every
    ///   column `b -> beta[b][a]` is a permutation of `B`;
    /// - `(3)` `alpha[b]` is multiplicative up to the `beta`-twist:
    ///   `alpha[b][a1 a2] = alpha[b][a1] * alpha[beta[b][a1]][a2]`;
    /// - `(4)` `beta` is multiplicative up to the `alpha`-twist:
    ///   `beta[b1 b2][a] = beta[b1][alpha[b2][a]] * beta[b2][a]`.
    ///
    /// Bijectivity failures render the sorted image list against the full
    /// element list, so duplicates are visible.
    pub fn verify_knit_actions(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let (ga, gb) = (&self.a, &self.b);
        let (na, nb) = (ga.order(), gb.order());
        let (ea, eb) = (ga.identity(), gb.identity());
        let a_name = |i: &usize| ga.name(*i).to_string();
        let b_name = |j: &usize| gb.name(*j).to_string();

        // (1) identity action, homomorphism, bijectivity
        for x in 0..na {
            report.check_named("(1)", &[ga.name(x)], self.alpha[eb][x], x, a_name);
        }
        for b1 in 0..nb {
            for b2 in 0..nb {
                for x in 0..na {
                    report.check_named(
                        "(1)",
                        &[gb.name(b1), gb.name(b2), ga.name(x)],
                        self.alpha[gb.mul(b1, b2)][x],
                        self.alpha[b1][self.alpha[b2][x]],
                        a_name,
                    );
                }
            }
        }
        let mut all_a: Vec<&str> = ga.elements().collect();
        all_a.sort_unstable();
        let all_a = all_a.join(", ");
        for b in 0..nb {
            report.tally();
            let mut images: Vec<&str> = self.alpha[b].iter().map(|&x| ga.name(x)).collect();
            images.sort_unstable();
            let images = images.join(", ");
            if images != all_a {
                report.violation("(1)", vec![gb.name(b).to_string()], images, all_a.clone());
            }
        }

        // (2) identity action, anti-homomorphism, bijectivity
        for b in 0..nb {
            report.check_named("(2)", &[gb.name(b)], self.beta[b][ea], b, b_name);
        }
        for a1 in 0..na {
            for a2 in 0..na {
                for b in 0..nb {
                    report.check_named(
                        "(2)",
                        &[ga.name(a1), ga.name(a2), gb.name(b)],
                        self.beta[b][ga.mul(a1, a2)],
                        self.beta[self.beta[b][a1]][a2],
                        b_name,
                    );
                }
            }
        }
        let mut all_b: Vec<&str> = gb.elements().collect();
        all_b.sort_unstable();
        let all_b = all_b.join(", ");
        for x in 0..na {
            report.tally();
            let mut images: Vec<&str> =
                (0..nb).map(|b| gb.name(self.beta[b][x])).collect();
            images.sort_unstable();
            let images = images.join(", ");
            if images != all_b {
                report.violation("(2)", vec![ga.name(x).to_string()], images, all_b.clone());
            }
        }

        // (3) alpha[b][a1 a2] = alpha[b][a1] * alpha[beta[b][a1]][a2]
        for b in 0..nb {
            for a1 in 0..na {
                for a2 in 0..na {
                    report.check_named(
                        "(3)",
                        &[gb.name(b), ga.name(a1), ga.name(a2)],
                        self.alpha[b][ga.mul(a1, a2)],
                        ga.mul(self.alpha[b][a1], self.alpha[self.beta[b][a1]][a2]),
                        a_name,
                    );
                }
            }
        }

        // (4) beta[b1 b2][a] = beta[b1][alpha[b2][a]] * beta[b2][a]
        for b1 in 0..nb {
            for b2 in 0..nb {
                for x in 0..na {
                    report.check_named(
                        "(4)",
                        &[gb.name(b1), gb.name(b2), ga.name(x)],
                        self.beta[gb.mul(b1, b2)][x],
                        gb.mul(self.beta[b1][self.alpha[b2][x]], self.beta[b2][x]),
                        b_name,
                    );
                }
            }
        }

        report
    }

    /// The knit product `A (x) B` on pairs `(a, b)` with
    ///
    /// ```text
    /// (a1, b1) * (a2, b2) = (a1 * alpha[b1][a2], beta[b1][a2] * b2)
    /// ```
    ///
    /// Elements are ordered lexicographically by (A-index, B-index) and
    /// named `"a|b"`. Rejects pairs failing [`verify_knit_actions`] with
    /// [`Error::InvalidPair`]; [`knit_group_product_unchecked`] builds the
    /// table regardless.
    ///
    /// [`verify_knit_actions`]: KnitPairGroup::verify_knit_actions
    /// [`knit_group_product_unchecked`]: KnitPairGroup::knit_group_product_unchecked
    pub fn knit_group_product(&self) -> Result<FiniteGroup, Error> {
        let report = self.verify_knit_actions();
        if !report.passed() {
            return Err(Error::InvalidPair { report });
        }
        self.knit_group_product_unchecked()
    }

    /// The knit-product table built without verifying the pair first.
    pub fn knit_group_product_unchecked(&self) -> Result<FiniteGroup, Error> {
        let (na, nb) = (self.a.order(), self.b.order());
        let mut elements = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                elements.push(self.pair_name(i, j));
            }
        }
        let mut table = Vec::with_capacity(na * nb);
        for a1 in 0..na {
            for b1 in 0..nb {
                let mut row = Vec::with_capacity(na * nb);
                for a2 in 0..na {
                    for b2 in 0..nb {
                        let left = self.a.mul(a1, self.alpha[b1][a2]);
                        let right = self.b.mul(self.beta[b1][a2], b2);
                        row.push(self.pair_index(left, right));
                    }
                }
                table.push(row);
            }
        }
        let identity = self.pair_index(self.a.identity(), self.b.identity());
        FiniteGroup::new(elements, table, identity)
    }
}

/// Reads the knitted actions off an exact factorization `G = A * B`: every
/// product `b * a` factors uniquely as `a' * b'` with
/// `a' = alpha[b][a]` and `b' = beta[b][a]`.
///
/// Both selections must be subgroups of the same `G` with trivial
/// intersection and `|A| * |B| = |G|`; factorization uses one precomputed
/// lookup over all products `a * b`, whose bijectivity is asserted.
pub fn decompose_group(
    g: &FiniteGroup,
    a_sel: &SubgroupSelection,
    b_sel: &SubgroupSelection,
) -> Result<KnitPairGroup, Error> {
    if a_sel.parent() != g || b_sel.parent() != g {
        return Err(Error::ShapeMismatch(
            "selections must live in the group being decomposed".to_string(),
        ));
    }
    if let Some(&common) = a_sel
        .members()
        .iter()
        .find(|&&m| m != g.identity() && b_sel.contains(m))
    {
        return Err(Error::IntersectionNontrivial { witness: g.name(common).to_string() });
    }
    let product = a_sel.len() * b_sel.len();
    if product != g.order() {
        return Err(Error::OrderMismatch { product, order: g.order() });
    }
    let sub_a = a_sel.subgroup()?;
    let sub_b = b_sel.subgroup()?;

    let mut lookup: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    for (i, &ga) in a_sel.members().iter().enumerate() {
        for (j, &gb) in b_sel.members().iter().enumerate() {
            let p = g.mul(ga, gb);
            if lookup[p].is_some() {
                return Err(Error::FactorizationFailed { witness: g.name(p).to_string() });
            }
            lookup[p] = Some((i, j));
        }
    }
    if let Some(missing) = (0..g.order()).find(|&p| lookup[p].is_none()) {
        return Err(Error::FactorizationFailed { witness: g.name(missing).to_string() });
    }

    let (na, nb) = (a_sel.len(), b_sel.len());
    let mut alpha = vec![vec![0; na]; nb];
    let mut beta = vec![vec![0; na]; nb];
    for (j, &gb) in b_sel.members().iter().enumerate() {
        for (i, &ga) in a_sel.members().iter().enumerate() {
            let (pa, pb) = lookup[g.mul(gb, ga)].expect("lookup is total");
            alpha[j][i] = pa;
            beta[j][i] = pb;
        }
    }
    KnitPairGroup::new(sub_a, sub_b, alpha, beta)
}

/// The four components of a map between knit products,
/// `Phi(a, b) = Phi(a, e) * Phi(e, b)` with `Phi(a, e) = (f(a), psi(a))`
/// and `Phi(e, b) = (phi(b), g(b))`: so `f: A -> A'`, `g: B -> B'`,
/// `phi: B -> A'`, `psi: A -> B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomQuadruple {
    f: GroupMap,
    g: GroupMap,
    phi: GroupMap,
    psi: GroupMap,
}

impl GroupHomQuadruple {
    pub fn new(f: GroupMap, g: GroupMap, phi: GroupMap, psi: GroupMap) -> Result<Self, Error> {
        if f.source() != psi.source() {
            return Err(Error::ShapeMismatch("f and psi must share their source".to_string()));
        }
        if g.source() != phi.source() {
            return Err(Error::ShapeMismatch("g and phi must share their source".to_string()));
        }
        if f.target() != phi.target() {
            return Err(Error::ShapeMismatch("f and phi must share their target".to_string()));
        }
        if g.target() != psi.target() {
            return Err(Error::ShapeMismatch("g and psi must share their target".to_string()));
        }
        Ok(GroupHomQuadruple { f, g, phi, psi })
    }

    /// The quadruple of the identity map of one knit product.
    pub fn identity(p: &KnitPairGroup) -> Self {
        let id = |g: &FiniteGroup| {
            GroupMap::new(g.clone(), g.clone(), (0..g.order()).collect())
                .expect("identity map is well formed")
        };
        let constant = |s: &FiniteGroup, t: &FiniteGroup| {
            GroupMap::new(s.clone(), t.clone(), vec![t.identity(); s.order()])
                .expect("constant-identity map is well formed")
        };
        GroupHomQuadruple {
            f: id(p.a()),
            g: id(p.b()),
            phi: constant(p.b(), p.a()),
            psi: constant(p.a(), p.b()),
        }
    }

    pub fn f(&self) -> &GroupMap {
        &self.f
    }

    pub fn g(&self) -> &GroupMap {
        &self.g
    }

    pub fn phi(&self) -> &GroupMap {
        &self.phi
    }

    pub fn psi(&self) -> &GroupMap {
        &self.psi
    }
}

fn check_group_quadruple_shapes(
    src: &KnitPairGroup,
    dst: &KnitPairGroup,
    q: &GroupHomQuadruple,
) -> Result<(), Error> {
    let pairs = [
        ("f", q.f(), src.a(), dst.a()),
        ("g", q.g(), src.b(), dst.b()),
        ("phi", q.phi(), src.b(), dst.a()),
        ("psi", q.psi(), src.a(), dst.b()),
    ];
    for (name, m, s, t) in pairs {
        if m.source() != s || m.target() != t {
            return Err(Error::ShapeMismatch(format!(
                "{} does not connect the source factors to the target factors",
                name
            )));
        }
    }
    Ok(())
}

/// Checks the equations characterizing when the assembled map
/// `Phi(a, b) = (f(a), psi(a)) * (phi(b), g(b))` is a homomorphism of knit
/// products. Labels:
///
/// - `"(f)"`: the twisted multiplicativity of `phi` over `B` and of `psi`
///   over `A`;
/// - `"(g)"`: the twisted multiplicativity of `f` over `A` and of `g` over
///   `B` — or, when `assume_f_g_homs` is set, the reduced fixed-point forms
///   `"(g')"` instead;
/// - `"(h)"`: compatibility with the knit relation `b * a = a' * b'`, one
///   check per component.
///
/// With `assume_f_g_homs` set, `f` and `g` are first required to pass
/// [`GroupMap::is_group_hom`]; a failure is
/// [`Error::NotAHomomorphism`] rather than a report entry.
pub fn check_group_quadruple(
    src: &KnitPairGroup,
    dst: &KnitPairGroup,
    q: &GroupHomQuadruple,
    assume_f_g_homs: bool,
) -> Result<VerificationReport, Error> {
    check_group_quadruple_shapes(src, dst, q)?;
    if assume_f_g_homs {
        if !q.f().is_group_hom().passed() {
            return Err(Error::NotAHomomorphism { which: "f" });
        }
        if !q.g().is_group_hom().passed() {
            return Err(Error::NotAHomomorphism { which: "g" });
        }
    }
    let mut report = VerificationReport::new();
    let (sa, sb) = (src.a(), src.b());
    let (da, db) = (dst.a(), dst.b());
    let (nsa, nsb) = (sa.order(), sb.order());
    let da_name = |i: &usize| da.name(*i).to_string();
    let db_name = |j: &usize| db.name(*j).to_string();
    let f = |i: usize| q.f().image(i);
    let g = |j: usize| q.g().image(j);
    let phi = |j: usize| q.phi().image(j);
    let psi = |i: usize| q.psi().image(i);

    // (f) phi(b1 b2) = phi(b1) * alpha'[g(b1)](phi(b2))
    for b1 in 0..nsb {
        for b2 in 0..nsb {
            report.check_named(
                "(f)",
                &[sb.name(b1), sb.name(b2)],
                phi(sb.mul(b1, b2)),
                da.mul(phi(b1), dst.alpha()[g(b1)][phi(b2)]),
                da_name,
            );
        }
    }
    // (f) psi(a1 a2) = beta'[psi(a1)](f(a2))... * psi(a2), i.e. the B'-part
    // of (f(a1), psi(a1)) * (f(a2), psi(a2)) with the A'-part delegated to (g)
    for a1 in 0..nsa {
        for a2 in 0..nsa {
            report.check_named(
                "(f)",
                &[sa.name(a1), sa.name(a2)],
                psi(sa.mul(a1, a2)),
                db.mul(dst.beta()[psi(a1)][f(a2)], psi(a2)),
                db_name,
            );
        }
    }

    if assume_f_g_homs {
        // (g') alpha'[psi(a1)] fixes f(a2); beta'^{phi(b2)} fixes g(b1)
        for a1 in 0..nsa {
            for a2 in 0..nsa {
                report.check_named(
                    "(g')",
                    &[sa.name(a1), sa.name(a2)],
                    f(a2),
                    dst.alpha()[psi(a1)][f(a2)],
                    da_name,
                );
            }
        }
        for b1 in 0..nsb {
            for b2 in 0..nsb {
                report.check_named(
                    "(g')",
                    &[sb.name(b1), sb.name(b2)],
                    g(b1),
                    dst.beta()[g(b1)][phi(b2)],
                    db_name,
                );
            }
        }
    } else {
        // (g) f(a1 a2) = f(a1) * alpha'[psi(a1)](f(a2))
        for a1 in 0..nsa {
            for a2 in 0..nsa {
                report.check_named(
                    "(g)",
                    &[sa.name(a1), sa.name(a2)],
                    f(sa.mul(a1, a2)),
                    da.mul(f(a1), dst.alpha()[psi(a1)][f(a2)]),
                    da_name,
                );
            }
        }
        // (g) g(b1 b2) = beta'^{phi(b2)}(g(b1)) * g(b2)
        for b1 in 0..nsb {
            for b2 in 0..nsb {
                report.check_named(
                    "(g)",
                    &[sb.name(b1), sb.name(b2)],
                    g(sb.mul(b1, b2)),
                    db.mul(dst.beta()[g(b1)][phi(b2)], g(b2)),
                    db_name,
                );
            }
        }
    }

    // (h) both components of Phi(b1 * a2) = Phi(b1) * Phi(a2), where
    // b1 * a2 = x * y with x = alpha[b1][a2], y = beta[b1][a2] in the source
    for b1 in 0..nsb {
        for a2 in 0..nsa {
            let x = src.alpha()[b1][a2];
            let y = src.beta()[b1][a2];
            report.check_named(
                "(h)",
                &[sb.name(b1), sa.name(a2)],
                da.mul(f(x), dst.alpha()[psi(x)][phi(y)]),
                da.mul(phi(b1), dst.alpha()[g(b1)][f(a2)]),
                da_name,
            );
            report.check_named(
                "(h)",
                &[sb.name(b1), sa.name(a2)],
                db.mul(dst.beta()[psi(x)][phi(y)], g(y)),
                db.mul(dst.beta()[g(b1)][f(a2)], psi(a2)),
                db_name,
            );
        }
    }

    Ok(report)
}

/// Assembles the pair map `Phi(a, b) = (f(a) * alpha'[psi(a)](phi(b)),
/// beta'^{phi(b)}(psi(a)) * g(b))` between the knit products (built
/// unchecked, so broken pairs and quadruples still assemble), together with
/// the homomorphism check of `Phi` over all pairs of pairs (label `"(3)"`).
pub fn assemble_group_hom(
    src: &KnitPairGroup,
    dst: &KnitPairGroup,
    q: &GroupHomQuadruple,
) -> Result<(GroupMap, VerificationReport), Error> {
    check_group_quadruple_shapes(src, dst, q)?;
    let src_prod = src.knit_group_product_unchecked()?;
    let dst_prod = dst.knit_group_product_unchecked()?;
    let mut images = Vec::with_capacity(src.pair_count());
    for i in 0..src.a().order() {
        for j in 0..src.b().order() {
            let twisted = dst.alpha()[q.psi().image(i)][q.phi().image(j)];
            let phi1 = dst.a().mul(q.f().image(i), twisted);
            let phi2 = dst.b().mul(
                dst.beta()[q.psi().image(i)][q.phi().image(j)],
                q.g().image(j),
            );
            images.push(dst.pair_index(phi1, phi2));
        }
    }
    let map = GroupMap::new(src_prod, dst_prod, images)?;

    let mut report = VerificationReport::new();
    let n = map.source().order();
    for p in 0..n {
        for r in 0..n {
            report.check_named(
                "(3)",
                &[map.source().name(p), map.source().name(r)],
                map.image(map.source().mul(p, r)),
                map.target().mul(map.image(p), map.image(r)),
                |x| map.target().name(*x).to_string(),
            );
        }
    }
    Ok((map, report))
}

/// Reads a quadruple off a pair of component maps
/// `Phi1: G -> A'`, `Phi2: G -> B'` defined on the knit product of `src`,
/// by restriction: `f(a) = Phi1(a, e)`, `g(b) = Phi2(e, b)`,
/// `phi(b) = Phi1(e, b)`, `psi(a) = Phi2(a, e)`.
pub fn extract_group_quadruple(
    src: &KnitPairGroup,
    phi1: &GroupMap,
    phi2: &GroupMap,
) -> Result<GroupHomQuadruple, Error> {
    let product = src.knit_group_product_unchecked()?;
    if phi1.source() != &product || phi2.source() != &product {
        return Err(Error::ShapeMismatch(
            "component maps must be defined on the knit product of the source pair".to_string(),
        ));
    }
    let (ea, eb) = (src.a().identity(), src.b().identity());
    let f_images = (0..src.a().order()).map(|i| phi1.image(src.pair_index(i, eb))).collect();
    let psi_images = (0..src.a().order()).map(|i| phi2.image(src.pair_index(i, eb))).collect();
    let phi_images = (0..src.b().order()).map(|j| phi1.image(src.pair_index(ea, j))).collect();
    let g_images = (0..src.b().order()).map(|j| phi2.image(src.pair_index(ea, j))).collect();
    GroupHomQuadruple::new(
        GroupMap::new(src.a().clone(), phi1.target().clone(), f_images)?,
        GroupMap::new(src.b().clone(), phi2.target().clone(), g_images)?,
        GroupMap::new(src.b().clone(), phi1.target().clone(), phi_images)?,
        GroupMap::new(src.a().clone(), phi2.target().clone(), psi_images)?,
    )
}

/// Splits a map into the knit product of `dst` into its two component maps
/// `(Phi1, Phi2)`; inverse to pairing through [`KnitPairGroup::pair_index`].
pub fn split_pair_map(
    dst: &KnitPairGroup,
    map: &GroupMap,
) -> Result<(GroupMap, GroupMap), Error> {
    let product = dst.knit_group_product_unchecked()?;
    if map.target() != &product {
        return Err(Error::ShapeMismatch(
            "map target must be the knit product of the destination pair".to_string(),
        ));
    }
    let nb = dst.b().order();
    let phi1_images = map.images().iter().map(|&p| p / nb).collect();
    let phi2_images = map.images().iter().map(|&p| p % nb).collect();
    Ok((
        GroupMap::new(map.source().clone(), dst.a().clone(), phi1_images)?,
        GroupMap::new(map.source().clone(), dst.b().clone(), phi2_images)?,
    ))
}

/// Default cap on the knit-product order accepted by
/// [`enumerate_knit_pairs`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 32;

/// The result of enumerating knitted pairs: the pairs found, and whether
/// the list was cut off by the caller's limit.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub pairs: Vec<KnitPairGroup>,
    pub truncated: bool,
}

/// Enumerates every knitted pair of actions for the groups `A` and `B`
/// with the default product bound; see [`enumerate_knit_pairs_bounded`].
pub fn enumerate_knit_pairs(
    a: &FiniteGroup,
    b: &FiniteGroup,
    limit: Option<usize>,
) -> Result<Enumeration, Error> {
    enumerate_knit_pairs_bounded(a, b, limit, DEFAULT_ENUMERATION_BOUND)
}

/// Enumerates every `(alpha, beta)` table pair satisfying
/// [`KnitPairGroup::verify_knit_actions`], sorted lexicographically by the
/// flattened `(alpha, beta)` tables, then truncated to `limit` (with the
/// truncation flagged). Products of order above `bound` are rejected with
/// [`Error::BoundExceeded`].
///
/// The search enumerates condition-(1) candidates exactly — homomorphisms
/// from `B` into the identity-fixing permutations of `A`, built by
/// backtracking over images of a generating sequence — and condition-(2)
/// candidates as the same construction over the opposite group of `A`;
/// every combination is then filtered through the full four-condition
/// check. Restricting to identity-fixing permutations is sound because
/// conditions (1)-(4) force the actions to fix the identities. Both factors
/// are assumed to be groups. Cost grows rapidly with factor order even
/// inside the bound.
pub fn enumerate_knit_pairs_bounded(
    a: &FiniteGroup,
    b: &FiniteGroup,
    limit: Option<usize>,
    bound: usize,
) -> Result<Enumeration, Error> {
    let order = a.order() * b.order();
    if order > bound {
        return Err(Error::BoundExceeded { order, bound });
    }
    let alpha_candidates = action_homs(b, a);
    let beta_candidates = action_homs(&a.opposite(), b);

    let mut pairs = Vec::new();
    for alpha in &alpha_candidates {
        for anti in &beta_candidates {
            // anti[a] is the permutation beta^a of B; store beta[b][a]
            let beta: Vec<Vec<usize>> = (0..b.order())
                .map(|j| (0..a.order()).map(|i| anti[i][j]).collect())
                .collect();
            let pair = KnitPairGroup::new(a.clone(), b.clone(), alpha.clone(), beta)?;
            if pair.verify_knit_actions().passed() {
                pairs.push(pair);
            }
        }
    }
    pairs.sort_by(|p, q| (&p.alpha, &p.beta).cmp(&(&q.alpha, &q.beta)));
    let mut truncated = false;
    if let Some(cap) = limit {
        if pairs.len() > cap {
            pairs.truncate(cap);
            truncated = true;
        }
    }
    Ok(Enumeration { pairs, truncated })
}

/// All homomorphisms from `acting` into the group of identity-fixing
/// permutations of `space`'s index set, each returned as one permutation
/// per `acting` element. Backtracks over images of a generating sequence of
/// `acting`, pruning candidates to permutations whose order divides the
/// generator's order, and extends by closure with conflict detection.
fn action_homs(acting: &FiniteGroup, space: &FiniteGroup) -> Vec<Vec<Vec<usize>>> {
    let gens = generating_sequence(acting);
    let candidates: Vec<Vec<Vec<usize>>> = gens
        .iter()
        .map(|&g| match acting.element_order(g) {
            Some(k) => perms_fixing_point(space.order(), space.identity(), k),
            None => Vec::new(),
        })
        .collect();
    let mut out = Vec::new();
    let mut images: Vec<&Vec<usize>> = Vec::new();
    search_action_homs(acting, space, &gens, &candidates, &mut images, &mut out);
    out
}

fn search_action_homs<'a>(
    acting: &FiniteGroup,
    space: &FiniteGroup,
    gens: &[usize],
    candidates: &'a [Vec<Vec<usize>>],
    images: &mut Vec<&'a Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let level = images.len();
    if level == gens.len() {
        if let Some(table) = propagate_action(acting, space, gens, images) {
            if table.iter().all(Option::is_some) {
                out.push(table.into_iter().map(Option::unwrap).collect());
            }
        }
        return;
    }
    for candidate in &candidates[level] {
        images.push(candidate);
        if propagate_action(acting, space, gens, images).is_some() {
            search_action_homs(acting, space, gens, candidates, images, out);
        }
        images.pop();
    }
}

/// Closes a partial assignment of permutations to `acting`'s generators
/// under the product `perm[x y] = perm[x] . perm[y]`; `None` on conflict.
fn propagate_action(
    acting: &FiniteGroup,
    space: &FiniteGroup,
    gens: &[usize],
    images: &[&Vec<usize>],
) -> Option<Vec<Option<Vec<usize>>>> {
    let nb = acting.order();
    let mut table: Vec<Option<Vec<usize>>> = vec![None; nb];
    let mut defined = Vec::new();
    let define = |idx: usize,
                  perm: Vec<usize>,
                  table: &mut Vec<Option<Vec<usize>>>,
                  defined: &mut Vec<usize>| {
        match &table[idx] {
            Some(existing) => *existing == perm,
            None => {
                table[idx] = Some(perm);
                defined.push(idx);
                true
            }
        }
    };
    let identity_perm: Vec<usize> = (0..space.order()).collect();
    if !define(acting.identity(), identity_perm, &mut table, &mut defined) {
        return None;
    }
    for (&gen, &image) in gens.iter().zip(images) {
        if !define(gen, image.clone(), &mut table, &mut defined) {
            return None;
        }
    }
    loop {
        let mut changed = false;
        let snapshot = defined.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                let z = acting.mul(x, y);
                let composite: Vec<usize> = {
                    let (px, py) = (table[x].as_ref().unwrap(), table[y].as_ref().unwrap());
                    (0..space.order()).map(|t| px[py[t]]).collect()
                };
                match &table[z] {
                    Some(existing) => {
                        if *existing != composite {
                            return None;
                        }
                    }
                    None => {
                        if !define(z, composite, &mut table, &mut defined) {
                            return None;
                        }
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(table)
}

/// All permutations of `{0..n-1}` fixing `fixed` whose order divides `k`,
/// in lexicographic order of one-line notation. Generated by depth-first
/// assignment with cycle-length pruning, so the full factorial space is
/// never materialized.
fn perms_fixing_point(n: usize, fixed: usize, k: usize) -> Vec<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    fn dfs(
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
        fixed: usize,
        k: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = sigma.len();
        let mut pos = pos;
        while pos < n && pos == fixed {
            pos += 1;
        }
        if pos == n {
            out.push(sigma.clone());
            return;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            // cycle pruning: walk forward from y through assigned entries
            let mut length = 1;
            let mut cur = y;
            while cur != pos && sigma[cur] != UNSET {
                cur = sigma[cur];
                length += 1;
            }
            if cur == pos {
                // closing a cycle of this length
                if !k.is_multiple_of(length) {
                    continue;
                }
            } else if length >= k {
                // open chain already too long for any divisor of k
                continue;
            }
            sigma[pos] = y;
            used[y] = true;
            dfs(sigma, used, pos + 1, fixed, k, out);
            sigma[pos] = UNSET;
            used[y] = false;
        }
    }
    let mut sigma = vec![UNSET; n];
    let mut used = vec![false; n];
    sigma[fixed] = fixed;
    used[fixed] = true;
    let mut out = Vec::new();
    dfs(&mut sigma, &mut used, 0, fixed, k, &mut out);
    out
}
