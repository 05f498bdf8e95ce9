//! Knitted pairs of representations, the knit product of graded Lie
//! algebras, decomposition along a subalgebra splitting, and the
//! six-equation criterion for maps between knit products.

use crate::error::Error;
use crate::graded_lie::{end_bracket, is_graded_lie_hom, GradedLieAlgebra};
use crate::grading::{parity_sign, GradedBasis};
use crate::linmap::{GradedLinearMap, ShiftedEndomorphism};
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::vector::GradedVector;

/// A candidate derivatively knitted pair of representations `(alpha, beta)`
/// for two graded Lie algebras `A` and `B` over one grading mode.
///
/// `alpha[i]` is the action of the `i`-th basis element of `A` on `B`, an
/// endomorphism of `B`'s space shifting degree by `|a_i|`; `beta[j]` acts on
/// `A`'s space with shift `|b_j|`. Construction checks these shapes only;
/// whether the pair satisfies the knitting conditions is answered by
/// [`KnitPairLie::verify_knit_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnitPairLie {
    a: GradedLieAlgebra,
    b: GradedLieAlgebra,
    alpha: Vec<ShiftedEndomorphism>,
    beta: Vec<ShiftedEndomorphism>,
}

impl KnitPairLie {
    pub fn new(
        a: GradedLieAlgebra,
        b: GradedLieAlgebra,
        alpha: Vec<ShiftedEndomorphism>,
        beta: Vec<ShiftedEndomorphism>,
    ) -> Result<Self, Error> {
        if a.basis().mode() != b.basis().mode() {
            return Err(Error::BasisMismatch(format!(
                "factors graded over {} and {}",
                a.basis().mode(),
                b.basis().mode()
            )));
        }
        if alpha.len() != a.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} alpha actions for a factor of dimension {}",
                alpha.len(),
                a.dim()
            )));
        }
        if beta.len() != b.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} beta actions for a factor of dimension {}",
                beta.len(),
                b.dim()
            )));
        }
        for (i, m) in alpha.iter().enumerate() {
            if !m.is_endomorphism() || m.source() != b.basis() {
                return Err(Error::BasisMismatch(format!(
                    "alpha[{}] is not an endomorphism of B's space",
                    a.basis().name(i)
                )));
            }
            let want = b.basis().mode().normalize(a.basis().degree(i));
            if m.shift() != want {
                return Err(Error::ShapeMismatch(format!(
                    "alpha[{}] has shift {}, expected {}",
                    a.basis().name(i),
                    m.shift(),
                    want
                )));
            }
        }
        for (j, m) in beta.iter().enumerate() {
            if !m.is_endomorphism() || m.source() != a.basis() {
                return Err(Error::BasisMismatch(format!(
                    "beta[{}] is not an endomorphism of A's space",
                    b.basis().name(j)
                )));
            }
            let want = a.basis().mode().normalize(b.basis().degree(j));
            if m.shift() != want {
                return Err(Error::ShapeMismatch(format!(
                    "beta[{}] has shift {}, expected {}",
                    b.basis().name(j),
                    m.shift(),
                    want
                )));
            }
        }
        Ok(KnitPairLie { a, b, alpha, beta })
    }

    /// The pair with both actions zero (a direct-sum pair).
    pub fn zero(a: GradedLieAlgebra, b: GradedLieAlgebra) -> Result<Self, Error> {
        let alpha = (0..a.dim())
            .map(|i| GradedLinearMap::zero(b.basis(), b.basis(), a.basis().degree(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let beta = (0..b.dim())
            .map(|j| GradedLinearMap::zero(a.basis(), a.basis(), b.basis().degree(j)))
            .collect::<Result<Vec<_>, _>>()?;
        KnitPairLie::new(a, b, alpha, beta)
    }

    pub fn a(&self) -> &GradedLieAlgebra {
        &self.a
    }

    pub fn b(&self) -> &GradedLieAlgebra {
        &self.b
    }

    pub fn alpha(&self) -> &[ShiftedEndomorphism] {
        &self.alpha
    }

    pub fn beta(&self) -> &[ShiftedEndomorphism] {
        &self.beta
    }

    /// `alpha(x)y` for a vector `x` over `A` and `y` over `B`.
    pub fn alpha_apply(&self, x: &GradedVector, y: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.alpha[i].apply(y), c);
        }
        out
    }

    /// `beta(y)x` for a vector `y` over `B` and `x` over `A`.
    pub fn beta_apply(&self, y: &GradedVector, x: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (j, c) in y.iter() {
            out.add_scaled(&self.beta[j].apply(x), c);
        }
        out
    }

    /// Checks the four knitting conditions:
    ///
    /// - `(i)` `alpha` is a graded Lie algebra homomorphism of `A` into the
    ///   endomorphisms of `B` under the graded commutator;
    /// - `(ii)` the same for `beta` with the factors swapped;
    /// - `(iii)` `alpha(a)` acts as a derivation on `[b1,b2]` up to the
    ///   `beta`-correction terms, on all basis triples `(a, b1, b2)`;
    /// - `(iv)` the symmetric condition for `beta(b)` on `[a1,a2]`.
    ///
    /// Conditions `(i)` and `(ii)` are compared column-by-column, so their
    /// witnesses carry three names: the two acting elements and the basis
    /// element the maps disagree on.
    pub fn verify_knit_pair(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let (na, nb) = (self.a.dim(), self.b.dim());
        let mode = self.a.basis().mode();

        // (i): alpha([a_i, a_j]) = [alpha(a_i), alpha(a_j)] in End(B)
        for i in 0..na {
            for j in 0..na {
                let rhs_map = end_bracket(&self.alpha[i], &self.alpha[j])
                    .expect("alpha maps act on one space");
                let x = self.a.bracket_basis(i, j);
                for m in 0..nb {
                    let lhs = self.alpha_apply(&x, &GradedVector::basis(m));
                    let rhs = rhs_map.apply(&GradedVector::basis(m));
                    report.check_vectors(
                        "(i)",
                        &[self.a.basis().name(i), self.a.basis().name(j), self.b.basis().name(m)],
                        self.b.basis(),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }

        // (ii): beta([b_i, b_j]) = [beta(b_i), beta(b_j)] in End(A)
        for i in 0..nb {
            for j in 0..nb {
                let rhs_map = end_bracket(&self.beta[i], &self.beta[j])
                    .expect("beta maps act on one space");
                let y = self.b.bracket_basis(i, j);
                for m in 0..na {
                    let lhs = self.beta_apply(&y, &GradedVector::basis(m));
                    let rhs = rhs_map.apply(&GradedVector::basis(m));
                    report.check_vectors(
                        "(ii)",
                        &[self.b.basis().name(i), self.b.basis().name(j), self.a.basis().name(m)],
                        self.a.basis(),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }

        // (iii): alpha(a)[b1,b2] = [alpha(a)b1, b2] + (-1)^{|a||b1|}[b1, alpha(a)b2]
        //        - ( (-1)^{|a||b1|} alpha(beta(b1)a)b2
        //            - (-1)^{(|a|+|b1|)|b2|} alpha(beta(b2)a)b1 )
        for i in 0..na {
            let da = self.a.basis().degree(i);
            for j in 0..nb {
                let dbj = self.b.basis().degree(j);
                let s1 = parity_sign(da, dbj, mode);
                for k in 0..nb {
                    let dbk = self.b.basis().degree(k);
                    let s2 = parity_sign(da + dbj, dbk, mode);
                    let lhs = self.alpha[i].apply(&self.b.bracket_basis(j, k));
                    let mut rhs = self.b.bracket(self.alpha[i].column(j), &GradedVector::basis(k));
                    rhs.add_scaled(
                        &self.b.bracket(&GradedVector::basis(j), self.alpha[i].column(k)),
                        &s1,
                    );
                    rhs.add_scaled(
                        &self.alpha_apply(self.beta[j].column(i), &GradedVector::basis(k)),
                        &-&s1,
                    );
                    rhs.add_scaled(
                        &self.alpha_apply(self.beta[k].column(i), &GradedVector::basis(j)),
                        &s2,
                    );
                    report.check_vectors(
                        "(iii)",
                        &[self.a.basis().name(i), self.b.basis().name(j), self.b.basis().name(k)],
                        self.b.basis(),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }

        // (iv): beta(b)[a1,a2] = [beta(b)a1, a2] + (-1)^{|b||a1|}[a1, beta(b)a2]
        //       - ( (-1)^{|b||a1|} beta(alpha(a1)b)a2
        //           - (-1)^{(|b|+|a1|)|a2|} beta(alpha(a2)b)a1 )
        for j in 0..nb {
            let db = self.b.basis().degree(j);
            for i1 in 0..na {
                let da1 = self.a.basis().degree(i1);
                let s1 = parity_sign(db, da1, mode);
                for i2 in 0..na {
                    let da2 = self.a.basis().degree(i2);
                    let s2 = parity_sign(db + da1, da2, mode);
                    let lhs = self.beta[j].apply(&self.a.bracket_basis(i1, i2));
                    let mut rhs =
                        self.a.bracket(self.beta[j].column(i1), &GradedVector::basis(i2));
                    rhs.add_scaled(
                        &self.a.bracket(&GradedVector::basis(i1), self.beta[j].column(i2)),
                        &s1,
                    );
                    rhs.add_scaled(
                        &self.beta_apply(self.alpha[i1].column(j), &GradedVector::basis(i2)),
                        &-&s1,
                    );
                    rhs.add_scaled(
                        &self.beta_apply(self.alpha[i2].column(j), &GradedVector::basis(i1)),
                        &s2,
                    );
                    report.check_vectors(
                        "(iv)",
                        &[self.b.basis().name(j), self.a.basis().name(i1), self.a.basis().name(i2)],
                        self.a.basis(),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }

        report
    }

    /// The basis of the knit product: all of `A`'s entries followed by all
    /// of `B`'s, with degrees inherited. Names are kept as-is unless the same
    /// name occurs in both factors, in which case both occurrences are
    /// prefixed `A.` and `B.`.
    pub fn product_basis(&self) -> Result<GradedBasis, Error> {
        let collides = |name: &str| {
            self.b.basis().entries().any(|(n, _)| n == name)
                && self.a.basis().entries().any(|(n, _)| n == name)
        };
        let mut entries = Vec::with_capacity(self.a.dim() + self.b.dim());
        for (name, degree) in self.a.basis().entries() {
            let name = if collides(name) { format!("A.{}", name) } else { name.to_string() };
            entries.push((name, degree));
        }
        for (name, degree) in self.b.basis().entries() {
            let name = if collides(name) { format!("B.{}", name) } else { name.to_string() };
            entries.push((name, degree));
        }
        GradedBasis::new(entries, self.a.basis().mode())
    }

    /// The knit product `A (+) B` with the bracket
    ///
    /// ```text
    /// [(a1,b1),(a2,b2)] = ( [a1,a2] + beta(b1)a2 - (-1)^{|b2||a1|} beta(b2)a1,
    ///                       [b1,b2] + alpha(a1)b2 - (-1)^{|a2||b1|} alpha(a2)b1 )
    /// ```
    ///
    /// Rejects pairs failing [`verify_knit_pair`] with
    /// [`Error::InvalidPair`]; use [`knit_product_unchecked`] to study broken
    /// pairs, in which case the result carries no Jacobi guarantee.
    ///
    /// [`verify_knit_pair`]: KnitPairLie::verify_knit_pair
    /// [`knit_product_unchecked`]: KnitPairLie::knit_product_unchecked
    pub fn knit_product(&self) -> Result<GradedLieAlgebra, Error> {
        let report = self.verify_knit_pair();
        if !report.passed() {
            return Err(Error::InvalidPair { report });
        }
        self.knit_product_unchecked()
    }

    /// The knit-product table built without verifying the pair first.
    pub fn knit_product_unchecked(&self) -> Result<GradedLieAlgebra, Error> {
        let basis = self.product_basis()?;
        let na = self.a.dim();
        let mode = self.a.basis().mode();
        let mut entries = Vec::new();
        for (i, j, v) in self.a.structure_iter() {
            entries.push(((i, j), v.clone()));
        }
        for i in 0..na {
            for j in 0..self.b.dim() {
                // [(a_i, 0), (0, b_j)] = ( -(-1)^{|a_i||b_j|} beta(b_j)a_i,
                //                          alpha(a_i)b_j )
                let sign = parity_sign(self.a.basis().degree(i), self.b.basis().degree(j), mode);
                let mut v = GradedVector::zero();
                v.add_scaled(self.beta[j].column(i), &-&sign);
                for (k, c) in self.alpha[i].column(j).iter() {
                    v.add_term(na + k, c.clone());
                }
                if !v.is_zero() {
                    entries.push(((i, na + j), v));
                }
            }
        }
        for (i, j, v) in self.b.structure_iter() {
            let shifted =
                GradedVector::from_terms(v.iter().map(|(k, c)| (na + k, c.clone())));
            entries.push(((na + i, na + j), shifted));
        }
        GradedLieAlgebra::new(basis, entries)
    }
}

/// Splits a graded Lie algebra `C` along a partition of its basis into two
/// subalgebra spans and reads off the knitted pair: on mixed basis pairs,
/// `[a,b] = alpha(a)b - (-1)^{|a||b|} beta(b)a` with `alpha(a)b` the
/// `B`-component and `beta(b)a` recovered from the `A`-component.
///
/// The index sets must partition the basis and each must span a subalgebra;
/// `C` itself is expected to be a graded Lie algebra (this function does not
/// re-verify the Jacobi identity). The factors keep their basis order from
/// `C` (the index sets are treated as sets).
pub fn decompose_lie(
    c: &GradedLieAlgebra,
    a_indices: &[usize],
    b_indices: &[usize],
) -> Result<KnitPairLie, Error> {
    let n = c.dim();
    // position of each C-index inside its factor, tagged by membership
    let mut slot: Vec<Option<(bool, usize)>> = vec![None; n];
    let mut a_sorted: Vec<usize> = a_indices.to_vec();
    let mut b_sorted: Vec<usize> = b_indices.to_vec();
    a_sorted.sort_unstable();
    b_sorted.sort_unstable();
    for (in_a, sorted) in [(true, &a_sorted), (false, &b_sorted)] {
        for (pos, &idx) in sorted.iter().enumerate() {
            c.basis().check_index(idx)?;
            if slot[idx].is_some() {
                return Err(Error::NotAPartition(format!(
                    "`{}` selected twice",
                    c.basis().name(idx)
                )));
            }
            slot[idx] = Some((in_a, pos));
        }
    }
    if let Some(missing) = (0..n).find(|&i| slot[i].is_none()) {
        return Err(Error::NotAPartition(format!(
            "`{}` belongs to neither factor",
            c.basis().name(missing)
        )));
    }

    // component of a C-vector in one factor, reindexed to factor positions
    let component = |v: &GradedVector, want_a: bool| -> GradedVector {
        GradedVector::from_terms(v.iter().filter_map(|(k, cv)| {
            let (in_a, pos) = slot[k].unwrap();
            (in_a == want_a).then(|| (pos, cv.clone()))
        }))
    };

    // each span must be closed under the bracket
    for (sorted, want_a) in [(&a_sorted, true), (&b_sorted, false)] {
        for &i in sorted.iter() {
            for &j in sorted.iter() {
                let v = c.bracket_basis(i, j);
                if v.iter().any(|(k, _)| slot[k].unwrap().0 != want_a) {
                    return Err(Error::NotASubalgebra {
                        x: c.basis().name(i).to_string(),
                        y: c.basis().name(j).to_string(),
                    });
                }
            }
        }
    }

    let factor = |sorted: &[usize], want_a: bool| -> Result<GradedLieAlgebra, Error> {
        let entries = sorted
            .iter()
            .map(|&i| (c.basis().name(i).to_string(), c.basis().degree(i)))
            .collect();
        let basis = GradedBasis::new(entries, c.basis().mode())?;
        let mut table = Vec::new();
        for (p, &i) in sorted.iter().enumerate() {
            for (q, &j) in sorted.iter().enumerate().skip(p) {
                let v = component(&c.bracket_basis(i, j), want_a);
                if !v.is_zero() {
                    table.push(((p, q), v));
                }
            }
        }
        GradedLieAlgebra::new(basis, table)
    };
    let a = factor(&a_sorted, true)?;
    let b = factor(&b_sorted, false)?;

    let mode = c.basis().mode();
    let mut alpha = Vec::with_capacity(a.dim());
    for &i in &a_sorted {
        let columns = b_sorted
            .iter()
            .map(|&j| component(&c.bracket_basis(i, j), false))
            .collect();
        alpha.push(GradedLinearMap::endomorphism(
            b.basis(),
            c.basis().degree(i),
            columns,
        )?);
    }
    let mut beta = Vec::with_capacity(b.dim());
    for &j in &b_sorted {
        let columns = a_sorted
            .iter()
            .map(|&i| {
                let sign = parity_sign(c.basis().degree(i), c.basis().degree(j), mode);
                component(&c.bracket_basis(i, j), true).scale(&-&sign)
            })
            .collect();
        beta.push(GradedLinearMap::endomorphism(
            a.basis(),
            c.basis().degree(j),
            columns,
        )?);
    }

    KnitPairLie::new(a, b, alpha, beta)
}

/// The four degree-preserving components of a linear map between knit
/// products, `Phi(a,b) = (f(a) + psi(b), g(b) + phi(a))`:
/// `f: A -> A'`, `g: B -> B'`, `phi: A -> B'`, `psi: B -> A'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieHomQuadruple {
    f: GradedLinearMap,
    g: GradedLinearMap,
    phi: GradedLinearMap,
    psi: GradedLinearMap,
}

impl LieHomQuadruple {
    pub fn new(
        f: GradedLinearMap,
        g: GradedLinearMap,
        phi: GradedLinearMap,
        psi: GradedLinearMap,
    ) -> Result<Self, Error> {
        for (name, m) in [("f", &f), ("g", &g), ("phi", &phi), ("psi", &psi)] {
            if m.shift() != 0 {
                return Err(Error::ShapeMismatch(format!(
                    "{} must preserve degree, but has shift {}",
                    name,
                    m.shift()
                )));
            }
        }
        if f.source() != phi.source() {
            return Err(Error::BasisMismatch("f and phi must share their source".into()));
        }
        if g.source() != psi.source() {
            return Err(Error::BasisMismatch("g and psi must share their source".into()));
        }
        if f.target() != psi.target() {
            return Err(Error::BasisMismatch("f and psi must share their target".into()));
        }
        if g.target() != phi.target() {
            return Err(Error::BasisMismatch("g and phi must share their target".into()));
        }
        Ok(LieHomQuadruple { f, g, phi, psi })
    }

    /// The quadruple of the identity map of one knit product.
    pub fn identity(p: &KnitPairLie) -> Self {
        LieHomQuadruple {
            f: GradedLinearMap::identity(p.a().basis()),
            g: GradedLinearMap::identity(p.b().basis()),
            phi: GradedLinearMap::zero(p.a().basis(), p.b().basis(), 0)
                .expect("zero map exists at shift 0"),
            psi: GradedLinearMap::zero(p.b().basis(), p.a().basis(), 0)
                .expect("zero map exists at shift 0"),
        }
    }

    /// The quadruple of the zero map between two knit products.
    pub fn zero(src: &KnitPairLie, dst: &KnitPairLie) -> Self {
        let z = |s: &GradedBasis, t: &GradedBasis| {
            GradedLinearMap::zero(s, t, 0).expect("zero map exists at shift 0")
        };
        LieHomQuadruple {
            f: z(src.a().basis(), dst.a().basis()),
            g: z(src.b().basis(), dst.b().basis()),
            phi: z(src.a().basis(), dst.b().basis()),
            psi: z(src.b().basis(), dst.a().basis()),
        }
    }

    pub fn f(&self) -> &GradedLinearMap {
        &self.f
    }

    pub fn g(&self) -> &GradedLinearMap {
        &self.g
    }

    pub fn phi(&self) -> &GradedLinearMap {
        &self.phi
    }

    pub fn psi(&self) -> &GradedLinearMap {
        &self.psi
    }
}

fn check_quadruple_shapes(
    src: &KnitPairLie,
    dst: &KnitPairLie,
    q: &LieHomQuadruple,
) -> Result<(), Error> {
    let pairs = [
        ("f", q.f(), src.a().basis(), dst.a().basis()),
        ("g", q.g(), src.b().basis(), dst.b().basis()),
        ("phi", q.phi(), src.a().basis(), dst.b().basis()),
        ("psi", q.psi(), src.b().basis(), dst.a().basis()),
    ];
    for (name, m, s, t) in pairs {
        if m.source() != s || m.target() != t {
            return Err(Error::BasisMismatch(format!(
                "{} does not connect the source factors to the target factors",
                name
            )));
        }
    }
    Ok(())
}

/// Checks the six equations characterizing when the assembled map
/// `Phi(a,b) = (f(a) + psi(b), g(b) + phi(a))` is a homomorphism of knit
/// products, on all ordered basis pairs of the appropriate factors. Report
/// labels are `"(1)"` through `"(6)"` in display order:
///
/// 1. `phi` against the `A`-bracket with `alpha'(f)` corrections,
/// 2. `psi` against the `B`-bracket with `beta'(g)` corrections,
/// 3. the mixed `[psi(b), f(a)]` equation,
/// 4. the mixed `[g(b), phi(a)]` equation,
/// 5. `f` against the `A`-bracket with `beta'(phi)` corrections,
/// 6. `g` against the `B`-bracket with `alpha'(psi)` corrections.
///
/// When `f` and `g` are themselves graded Lie algebra homomorphisms,
/// equations 5 and 6 reduce to their correction terms vanishing; in that
/// case the reduced forms are additionally reported as `"(5')"` and
/// `"(6')"`.
pub fn check_lie_quadruple(
    src: &KnitPairLie,
    dst: &KnitPairLie,
    q: &LieHomQuadruple,
) -> Result<VerificationReport, Error> {
    check_quadruple_shapes(src, dst, q)?;
    let mut report = VerificationReport::new();
    let (na, nb) = (src.a().dim(), src.b().dim());
    let mode = src.a().basis().mode();
    let a_name = |i: usize| src.a().basis().name(i);
    let b_name = |j: usize| src.b().basis().name(j);
    let (f, g, phi, psi) = (q.f(), q.g(), q.phi(), q.psi());

    // (1) phi([a1,a2]) = [phi a1, phi a2] + alpha'(f a1) phi a2
    //                    - (-1)^{|a1||a2|} alpha'(f a2) phi a1
    for i in 0..na {
        for j in 0..na {
            let sign = parity_sign(src.a().basis().degree(i), src.a().basis().degree(j), mode);
            let lhs = phi.apply(&src.a().bracket_basis(i, j));
            let mut rhs = dst.b().bracket(phi.column(i), phi.column(j));
            rhs.add_scaled(&dst.alpha_apply(f.column(i), phi.column(j)), &Rational::one());
            rhs.add_scaled(&dst.alpha_apply(f.column(j), phi.column(i)), &-&sign);
            report.check_vectors("(1)", &[a_name(i), a_name(j)], dst.b().basis(), &lhs, &rhs);
        }
    }

    // (2) psi([b1,b2]) = [psi b1, psi b2] + beta'(g b1) psi b2
    //                    - (-1)^{|b1||b2|} beta'(g b2) psi b1
    for i in 0..nb {
        for j in 0..nb {
            let sign = parity_sign(src.b().basis().degree(i), src.b().basis().degree(j), mode);
            let lhs = psi.apply(&src.b().bracket_basis(i, j));
            let mut rhs = dst.a().bracket(psi.column(i), psi.column(j));
            rhs.add_scaled(&dst.beta_apply(g.column(i), psi.column(j)), &Rational::one());
            rhs.add_scaled(&dst.beta_apply(g.column(j), psi.column(i)), &-&sign);
            report.check_vectors("(2)", &[b_name(i), b_name(j)], dst.a().basis(), &lhs, &rhs);
        }
    }

    // (3) [psi b, f a] = f(beta(b)a) - beta'(g b) f a
    //                    - (-1)^{|a||b|} ( psi(alpha(a)b) - beta'(phi a) psi b )
    for i in 0..na {
        for j in 0..nb {
            let sign = parity_sign(src.a().basis().degree(i), src.b().basis().degree(j), mode);
            let lhs = dst.a().bracket(psi.column(j), f.column(i));
            let mut rhs = f.apply(src.beta()[j].column(i));
            rhs.add_scaled(&dst.beta_apply(g.column(j), f.column(i)), &Rational::minus_one());
            rhs.add_scaled(&psi.apply(src.alpha()[i].column(j)), &-&sign);
            rhs.add_scaled(&dst.beta_apply(phi.column(i), psi.column(j)), &sign);
            report.check_vectors("(3)", &[a_name(i), b_name(j)], dst.a().basis(), &lhs, &rhs);
        }
    }

    // (4) [g b, phi a] = phi(beta(b)a) - alpha'(psi b) phi a
    //                    - (-1)^{|a||b|} ( g(alpha(a)b) - alpha'(f a) g b )
    for i in 0..na {
        for j in 0..nb {
            let sign = parity_sign(src.a().basis().degree(i), src.b().basis().degree(j), mode);
            let lhs = dst.b().bracket(g.column(j), phi.column(i));
            let mut rhs = phi.apply(src.beta()[j].column(i));
            rhs.add_scaled(&dst.alpha_apply(psi.column(j), phi.column(i)), &Rational::minus_one());
            rhs.add_scaled(&g.apply(src.alpha()[i].column(j)), &-&sign);
            rhs.add_scaled(&dst.alpha_apply(f.column(i), g.column(j)), &sign);
            report.check_vectors("(4)", &[a_name(i), b_name(j)], dst.b().basis(), &lhs, &rhs);
        }
    }

    // (5) f([a1,a2]) = [f a1, f a2] + beta'(phi a1) f a2
    //                  - (-1)^{|a1||a2|} beta'(phi a2) f a1
    for i in 0..na {
        for j in 0..na {
            let sign = parity_sign(src.a().basis().degree(i), src.a().basis().degree(j), mode);
            let lhs = f.apply(&src.a().bracket_basis(i, j));
            let mut rhs = dst.a().bracket(f.column(i), f.column(j));
            rhs.add_scaled(&dst.beta_apply(phi.column(i), f.column(j)), &Rational::one());
            rhs.add_scaled(&dst.beta_apply(phi.column(j), f.column(i)), &-&sign);
            report.check_vectors("(5)", &[a_name(i), a_name(j)], dst.a().basis(), &lhs, &rhs);
        }
    }

    // (6) g([b1,b2]) = [g b1, g b2] + alpha'(psi b1) g b2
    //                  - (-1)^{|b1||b2|} alpha'(psi b2) g b1
    for i in 0..nb {
        for j in 0..nb {
            let sign = parity_sign(src.b().basis().degree(i), src.b().basis().degree(j), mode);
            let lhs = g.apply(&src.b().bracket_basis(i, j));
            let mut rhs = dst.b().bracket(g.column(i), g.column(j));
            rhs.add_scaled(&dst.alpha_apply(psi.column(i), g.column(j)), &Rational::one());
            rhs.add_scaled(&dst.alpha_apply(psi.column(j), g.column(i)), &-&sign);
            report.check_vectors("(6)", &[b_name(i), b_name(j)], dst.b().basis(), &lhs, &rhs);
        }
    }

    // When f and g are homomorphisms the bracket terms in (5) and (6) cancel
    // against the left-hand sides, leaving the correction terms; report the
    // reduced forms separately.
    let f_hom = is_graded_lie_hom(src.a(), dst.a(), f)?.passed();
    let g_hom = is_graded_lie_hom(src.b(), dst.b(), g)?.passed();
    if f_hom && g_hom {
        for i in 0..na {
            for j in 0..na {
                let sign =
                    parity_sign(src.a().basis().degree(i), src.a().basis().degree(j), mode);
                let mut lhs = dst.beta_apply(phi.column(i), f.column(j));
                lhs.add_scaled(&dst.beta_apply(phi.column(j), f.column(i)), &-&sign);
                report.check_vectors(
                    "(5')",
                    &[a_name(i), a_name(j)],
                    dst.a().basis(),
                    &lhs,
                    &GradedVector::zero(),
                );
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                let sign =
                    parity_sign(src.b().basis().degree(i), src.b().basis().degree(j), mode);
                let mut lhs = dst.alpha_apply(psi.column(i), g.column(j));
                lhs.add_scaled(&dst.alpha_apply(psi.column(j), g.column(i)), &-&sign);
                report.check_vectors(
                    "(6')",
                    &[b_name(i), b_name(j)],
                    dst.b().basis(),
                    &lhs,
                    &GradedVector::zero(),
                );
            }
        }
    }

    Ok(report)
}

/// Assembles the linear map `Phi(a,b) = (f(a) + psi(b), g(b) + phi(a))`
/// between the knit-product spaces. Defined for any quadruple of the right
/// shape; whether it is a homomorphism is decided by
/// [`check_lie_quadruple`] or by running
/// [`is_graded_lie_hom`] on the result.
pub fn assemble_lie_hom(
    src: &KnitPairLie,
    dst: &KnitPairLie,
    q: &LieHomQuadruple,
) -> Result<GradedLinearMap, Error> {
    check_quadruple_shapes(src, dst, q)?;
    let source = src.product_basis()?;
    let target = dst.product_basis()?;
    let na_dst = dst.a().dim();
    let embed = |a_part: &GradedVector, b_part: &GradedVector| {
        let mut v = a_part.clone();
        for (k, c) in b_part.iter() {
            v.add_term(na_dst + k, c.clone());
        }
        v
    };
    let mut columns = Vec::with_capacity(source.len());
    for i in 0..src.a().dim() {
        columns.push(embed(q.f().column(i), q.phi().column(i)));
    }
    for j in 0..src.b().dim() {
        columns.push(embed(q.psi().column(j), q.g().column(j)));
    }
    GradedLinearMap::new(source, target, 0, columns)
}

/// Decomposes a degree-preserving linear map between knit-product spaces
/// into its quadruple of components; inverse to [`assemble_lie_hom`].
pub fn extract_lie_quadruple(
    src: &KnitPairLie,
    dst: &KnitPairLie,
    phi_map: &GradedLinearMap,
) -> Result<LieHomQuadruple, Error> {
    if phi_map.source() != &src.product_basis()? {
        return Err(Error::BasisMismatch(
            "map source is not the source knit-product space".into(),
        ));
    }
    if phi_map.target() != &dst.product_basis()? {
        return Err(Error::BasisMismatch(
            "map target is not the target knit-product space".into(),
        ));
    }
    if phi_map.shift() != 0 {
        return Err(Error::ShapeMismatch(format!(
            "expected a degree-preserving map, got shift {}",
            phi_map.shift()
        )));
    }
    let na_dst = dst.a().dim();
    let split = |v: &GradedVector| -> (GradedVector, GradedVector) {
        let a_part = GradedVector::from_terms(
            v.iter().filter(|(k, _)| *k < na_dst).map(|(k, c)| (k, c.clone())),
        );
        let b_part = GradedVector::from_terms(
            v.iter().filter(|(k, _)| *k >= na_dst).map(|(k, c)| (k - na_dst, c.clone())),
        );
        (a_part, b_part)
    };
    let mut f_cols = Vec::new();
    let mut phi_cols = Vec::new();
    for i in 0..src.a().dim() {
        let (a_part, b_part) = split(phi_map.column(i));
        f_cols.push(a_part);
        phi_cols.push(b_part);
    }
    let mut psi_cols = Vec::new();
    let mut g_cols = Vec::new();
    for j in 0..src.b().dim() {
        let (a_part, b_part) = split(phi_map.column(src.a().dim() + j));
        psi_cols.push(a_part);
        g_cols.push(b_part);
    }
    LieHomQuadruple::new(
        GradedLinearMap::new(src.a().basis().clone(), dst.a().basis().clone(), 0, f_cols)?,
        GradedLinearMap::new(src.b().basis().clone(), dst.b().basis().clone(), 0, g_cols)?,
        GradedLinearMap::new(src.a().basis().clone(), dst.b().basis().clone(), 0, phi_cols)?,
        GradedLinearMap::new(src.b().basis().clone(), dst.a().basis().clone(), 0, psi_cols)?,
    )
}
