//! Finite groups as explicit multiplication tables, subgroup selections,
//! maps between groups, and isomorphism testing.

use crate::error::Error;
use crate::report::VerificationReport;

/// All permutations of `{0..n-1}` in lexicographic order, in one-line
/// notation.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A finite magma-with-identity-candidate given by a full multiplication
/// table; whether it is actually a group is answered by
/// [`FiniteGroup::verify_group_table`].
///
/// Construction checks shape only: a square table over unique element names
/// with in-range entries and identity index. This keeps deliberately broken
/// tables constructible so their violations can be reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<Self, Error> {
        let n = elements.len();
        for (i, name) in elements.iter().enumerate() {
            if elements[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if table.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} table rows for {} elements",
                table.len(),
                n
            )));
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::RaggedTable { row, len: entries.len(), expected: n });
            }
            for &entry in entries {
                if entry >= n {
                    return Err(Error::IndexOutOfRange { index: entry, size: n });
                }
            }
        }
        if identity >= n {
            return Err(Error::IndexOutOfRange { index: identity, size: n });
        }
        Ok(FiniteGroup { elements, table, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The name of element `i`. Panics if `i` is out of range.
    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, Error> {
        self.elements
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// The table entry for `i * j`. Panics if either index is out of range.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// The two-sided inverse of `i`, if one exists in the table.
    pub fn inverse(&self, i: usize) -> Option<usize> {
        (0..self.order())
            .find(|&j| self.mul(i, j) == self.identity && self.mul(j, i) == self.identity)
    }

    /// The least `k >= 1` with `i^k = e`, or `None` if no power within the
    /// group order reaches the identity (possible only for non-group tables).
    pub fn element_order(&self, i: usize) -> Option<usize> {
        let mut acc = i;
        for k in 1..=self.order() {
            if acc == self.identity {
                return Some(k);
            }
            acc = self.mul(acc, i);
        }
        None
    }

    /// The opposite table, `i *' j = j * i`. A group's opposite is a group.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.order();
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.table[j][i]).collect())
            .collect();
        FiniteGroup {
            elements: self.elements.clone(),
            table,
            identity: self.identity,
        }
    }

    /// Checks the group laws, reporting every violation:
    ///
    /// - `"left-identity"` / `"right-identity"` per element;
    /// - `"row-latin"` / `"column-latin"`: each row and column is a
    ///   permutation of the elements (rendered as the sorted image list
    ///   against the full element list, so duplicates are visible);
    /// - `"inverse"` per element;
    /// - `"associativity"` on all ordered triples.
    pub fn verify_group_table(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let n = self.order();
        let e = self.identity;
        let mut all_names: Vec<&str> = self.elements().collect();
        all_names.sort_unstable();
        let all_names = all_names.join(", ");

        for x in 0..n {
            report.check_named("left-identity", &[self.name(x)], self.mul(e, x), x, |i| {
                self.name(*i).to_string()
            });
        }
        for x in 0..n {
            report.check_named("right-identity", &[self.name(x)], self.mul(x, e), x, |i| {
                self.name(*i).to_string()
            });
        }
        for i in 0..n {
            let mut images: Vec<&str> = (0..n).map(|j| self.name(self.mul(i, j))).collect();
            images.sort_unstable();
            let images = images.join(", ");
            report.check_named(
                "row-latin",
                &[self.name(i)],
                images.as_str(),
                all_names.as_str(),
                |s| s.to_string(),
            );
        }
        for j in 0..n {
            let mut images: Vec<&str> = (0..n).map(|i| self.name(self.mul(i, j))).collect();
            images.sort_unstable();
            let images = images.join(", ");
            report.check_named(
                "column-latin",
                &[self.name(j)],
                images.as_str(),
                all_names.as_str(),
                |s| s.to_string(),
            );
        }
        for x in 0..n {
            report.tally();
            if self.inverse(x).is_none() {
                report.violation(
                    "inverse",
                    vec![self.name(x).to_string()],
                    "no two-sided inverse",
                    "an inverse element",
                );
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    report.check_named(
                        "associativity",
                        &[self.name(i), self.name(j), self.name(k)],
                        self.mul(self.mul(i, j), k),
                        self.mul(i, self.mul(j, k)),
                        |x| self.name(*x).to_string(),
                    );
                }
            }
        }
        report
    }
}

/// A chosen subset of a group's elements, candidate for a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSelection {
    parent: FiniteGroup,
    members: Vec<usize>,
}

impl SubgroupSelection {
    /// Records a selection of parent indices; duplicates collapse and the
    /// order of `members` is irrelevant.
    pub fn new(parent: FiniteGroup, members: Vec<usize>) -> Result<Self, Error> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m >= parent.order() {
                return Err(Error::IndexOutOfRange { index: m, size: parent.order() });
            }
        }
        Ok(SubgroupSelection { parent, members })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Checks that the selection is a subgroup: contains the identity
    /// (`"identity"`), is closed under multiplication (`"closure"`), and
    /// contains inverses (`"inverse"`).
    pub fn is_subgroup(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let g = &self.parent;
        let member = "a member of the selection";
        report.tally();
        if !self.contains(g.identity()) {
            report.violation(
                "identity",
                vec![g.name(g.identity()).to_string()],
                g.name(g.identity()),
                member,
            );
        }
        for &x in &self.members {
            for &y in &self.members {
                report.tally();
                let z = g.mul(x, y);
                if !self.contains(z) {
                    report.violation(
                        "closure",
                        vec![g.name(x).to_string(), g.name(y).to_string()],
                        g.name(z),
                        member,
                    );
                }
            }
        }
        for &x in &self.members {
            report.tally();
            match g.inverse(x) {
                Some(xi) if self.contains(xi) => {}
                Some(xi) => report.violation(
                    "inverse",
                    vec![g.name(x).to_string()],
                    g.name(xi),
                    member,
                ),
                None => report.violation(
                    "inverse",
                    vec![g.name(x).to_string()],
                    "no two-sided inverse",
                    member,
                ),
            }
        }
        report
    }

    /// Whether the selection is a normal subgroup: `g s g^{-1}` stays in the
    /// selection for every parent element `g`. Returns `false` if some
    /// parent element lacks an inverse.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        for x in 0..g.order() {
            let Some(xi) = g.inverse(x) else { return false };
            for &s in &self.members {
                if !self.contains(g.mul(g.mul(x, s), xi)) {
                    return false;
                }
            }
        }
        true
    }

    /// The selection as a group in its own right, with names inherited from
    /// the parent. Fails with [`Error::NotClosed`] if some product leaves
    /// the selection, or [`Error::ShapeMismatch`] if the identity is
    /// missing.
    pub fn subgroup(&self) -> Result<FiniteGroup, Error> {
        let g = &self.parent;
        let position = |i: usize| self.members.binary_search(&i).ok();
        let Some(identity) = position(g.identity()) else {
            return Err(Error::ShapeMismatch(
                "selection does not contain the identity".to_string(),
            ));
        };
        let mut table = Vec::with_capacity(self.len());
        for &x in &self.members {
            let mut row = Vec::with_capacity(self.len());
            for &y in &self.members {
                match position(g.mul(x, y)) {
                    Some(p) => row.push(p),
                    None => {
                        return Err(Error::NotClosed {
                            x: g.name(x).to_string(),
                            y: g.name(y).to_string(),
                        })
                    }
                }
            }
            table.push(row);
        }
        let elements = self.members.iter().map(|&i| g.name(i).to_string()).collect();
        FiniteGroup::new(elements, table, identity)
    }
}

/// A map between two groups, given element-wise. Whether it is a
/// homomorphism is answered by [`GroupMap::is_group_hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupMap {
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        images: Vec<usize>,
    ) -> Result<Self, Error> {
        if images.len() != source.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        for &im in &images {
            if im >= target.order() {
                return Err(Error::IndexOutOfRange { index: im, size: target.order() });
            }
        }
        Ok(GroupMap { source, target, images })
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Checks `f(x y) = f(x) f(y)` on all ordered pairs (label `"hom"`).
    pub fn is_group_hom(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let n = self.source.order();
        for i in 0..n {
            for j in 0..n {
                report.check_named(
                    "hom",
                    &[self.source.name(i), self.source.name(j)],
                    self.image(self.source.mul(i, j)),
                    self.target.mul(self.image(i), self.image(j)),
                    |x| self.target.name(*x).to_string(),
                );
            }
        }
        report
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        for &im in &self.images {
            if seen[im] {
                return false;
            }
            seen[im] = true;
        }
        true
    }
}

/// Searches for an isomorphism between groups of order at most 64;
/// see [`are_isomorphic_bounded`] for the general form.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupMap>, Error> {
    are_isomorphic_bounded(g, h, 64)
}

/// Searches for an isomorphism `g -> h` by backtracking over images of a
/// greedy generating sequence, pruning candidates by element order and by
/// partial-closure conflicts. Returns the first isomorphism found (in a
/// deterministic candidate order) or `None`; inputs of order above `limit`
/// are rejected with [`Error::OrderLimitExceeded`].
pub fn are_isomorphic_bounded(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limit: usize,
) -> Result<Option<GroupMap>, Error> {
    let order = g.order().max(h.order());
    if order > limit {
        return Err(Error::OrderLimitExceeded { order, limit });
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let profile = |x: &FiniteGroup| {
        let mut orders: Vec<usize> = (0..x.order())
            .map(|i| x.element_order(i).unwrap_or(0))
            .collect();
        orders.sort_unstable();
        orders
    };
    if profile(g) != profile(h) {
        return Ok(None);
    }

    let gens = generating_sequence(g);
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &mut images))
}

/// A greedy generating sequence: repeatedly adjoin the smallest index not
/// yet in the generated subgroup.
pub(crate) fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut in_closure = vec![false; n];
    let mut closure = vec![g.identity()];
    in_closure[g.identity()] = true;
    let mut gens = Vec::new();
    while let Some(next) = (0..n).find(|&i| !in_closure[i]) {
        gens.push(next);
        in_closure[next] = true;
        closure.push(next);
        loop {
            let mut changed = false;
            let snapshot = closure.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let z = g.mul(x, y);
                    if !in_closure[z] {
                        in_closure[z] = true;
                        closure.push(z);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    gens
}

/// Propagates a partial assignment `gens[k] -> images[k]` to the subgroup
/// it generates. Returns the partial map (usize::MAX marks undefined) or
/// `None` on a homomorphism or injectivity conflict.
fn propagate(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut defined = Vec::new();
    let define = |x: usize,
                  w: usize,
                  map: &mut Vec<usize>,
                  used: &mut Vec<bool>,
                  defined: &mut Vec<usize>| {
        if map[x] != usize::MAX {
            return map[x] == w;
        }
        if used[w] {
            return false;
        }
        map[x] = w;
        used[w] = true;
        defined.push(x);
        true
    };
    if !define(g.identity(), h.identity(), &mut map, &mut used, &mut defined) {
        return None;
    }
    for (&gen, &im) in gens.iter().zip(images) {
        if !define(gen, im, &mut map, &mut used, &mut defined) {
            return None;
        }
    }
    loop {
        let mut changed = false;
        let snapshot = defined.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                let z = g.mul(x, y);
                let w = h.mul(map[x], map[y]);
                if map[z] == usize::MAX {
                    if !define(z, w, &mut map, &mut used, &mut defined) {
                        return None;
                    }
                    changed = true;
                } else if map[z] != w {
                    return None;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(map)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &mut Vec<usize>,
) -> Option<GroupMap> {
    let k = images.len();
    if k == gens.len() {
        let map = propagate(g, h, gens, images)?;
        if map.contains(&usize::MAX) {
            return None;
        }
        let candidate = GroupMap::new(g.clone(), h.clone(), map).ok()?;
        if candidate.is_bijective() && candidate.is_group_hom().passed() {
            return Some(candidate);
        }
        return None;
    }
    let want = g.element_order(gens[k]);
    for cand in 0..h.order() {
        if h.element_order(cand) != want || images.contains(&cand) {
            continue;
        }
        images.push(cand);
        if propagate(g, h, gens, images).is_some() {
            if let Some(found) = search(g, h, gens, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}
