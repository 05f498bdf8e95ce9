//! The line-oriented manifest format shared by all subcommands.
//!
//! Every document starts with a `knit-manifest 1` header and a `kind` line,
//! followed by kind-specific field lines. `#` starts a comment; blank lines
//! are ignored; unknown keywords are rejected. Rationals are written as `p`
//! or `p/q` strings, never floats. Emission is canonical: fixed field order,
//! reduced rationals, combined and sorted term lists — so
//! `emit(parse(emit(x))) == emit(x)` byte for byte.
//!
//! Kinds and their fields:
//!
//! - `graded-lie`: `mode Z|Z2`, `basis <name> <degree>` per element,
//!   `bracket <x> <y> = <terms>` per nonzero bracket with `x` at or before
//!   `y` in the basis (the lower half-table only).
//! - `group`: `element <name>` per element, `identity <name>`,
//!   `row <x> = <products>` giving `x*y` for every `y` in element order.
//! - `knit-pair-lie`: `mode`, factor blocks `a.basis`/`a.bracket` and
//!   `b.basis`/`b.bracket` as in `graded-lie`, then `alpha <a> <b> = <terms>`
//!   (the value of `alpha(a)` on `b`, in the B-basis) and
//!   `beta <b> <a> = <terms>` (the value of `beta(b)` on `a`, in the
//!   A-basis); zero values are omitted.
//! - `knit-pair-group`: factor blocks `a.element`/`a.identity`/`a.row` and
//!   `b.*`, then `alpha <b> = <images>` (the permutation `alpha_b` of `A` in
//!   A-order) and `beta <a> = <images>` (the map `beta^a` of `B` in B-order).
//! - `map`: `variant lie` with `mode`, `shift`, `source <name> <degree>`,
//!   `target <name> <degree>` and `column <src> = <terms>` lines; or
//!   `variant group` with `source <name>`, `target <name>` and
//!   `image <src> = <dst>` lines.
//! - `quadruple`: `variant lie|group` with `f`, `g`, `phi`, `psi` lines
//!   (`f <src> = <terms>` for lie, `f <src> = <dst>` for group); omitted
//!   lie lines are zero columns, group images must be total. Names refer to
//!   the source and destination pairs supplied alongside the quadruple.
//!
//! A trailing `unverified` line marks output produced with
//! `--allow-invalid`: the document is well formed but carries no guarantee.

use std::collections::BTreeMap;
use std::fmt;

use knit_core::{
    FiniteGroup, GradedBasis, GradedLieAlgebra, GradedLinearMap, GradedVector, GradingMode,
    GroupHomQuadruple, GroupMap, KnitPairGroup, KnitPairLie, LieHomQuadruple, Rational,
};

pub const FORMAT_VERSION: u32 = 1;

/// A parse failure with its position in the input.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(f, "line {}, column {}: {}", self.line, c, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column: None, message: message.into() }
}

fn err_at(line: usize, raw: &str, token: &str, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column: raw.find(token).map(|i| i + 1),
        message: message.into(),
    }
}

/// A parsed manifest: a typed body plus the no-guarantee marker.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub body: Body,
    pub unverified: bool,
}

impl Document {
    pub fn verified(body: Body) -> Self {
        Document { body, unverified: false }
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::GradedLie(_) => "graded-lie",
            Body::Group(_) => "group",
            Body::PairLie(_) => "knit-pair-lie",
            Body::PairGroup(_) => "knit-pair-group",
            Body::MapLie(_) | Body::MapGroup(_) => "map",
            Body::QuadLie(_) | Body::QuadGroup(_) => "quadruple",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    GradedLie(GradedLieAlgebra),
    Group(FiniteGroup),
    PairLie(KnitPairLie),
    PairGroup(KnitPairGroup),
    MapLie(GradedLinearMap),
    MapGroup(NamedMap),
    QuadLie(QuadDoc<Terms>),
    QuadGroup(QuadDoc<String>),
}

/// A name-level group map: source and target element names plus image lines.
/// Group maps are emitted by `hom-assemble` and carry no multiplication
/// tables of their own.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    /// `(source element, image)`, sorted by source element name.
    pub images: Vec<(String, String)>,
}

/// Combined, name-sorted, nonzero terms of one column.
pub type Terms = Vec<(String, Rational)>;

/// The four component maps of a quadruple, name-level. Lines are sorted by
/// source name; `V` is a term list (lie) or an image name (group).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuadDoc<V> {
    pub f: Vec<(String, V)>,
    pub g: Vec<(String, V)>,
    pub phi: Vec<(String, V)>,
    pub psi: Vec<(String, V)>,
}

// ---------------------------------------------------------------------------
// parsing

struct Line<'a> {
    no: usize,
    raw: &'a str,
}

impl<'a> Line<'a> {
    /// Splits `keyword args... = value` into the keyword, the remaining
    /// left-hand tokens, and the optional right-hand side.
    fn split(&self) -> (Vec<&'a str>, Option<&'a str>) {
        match self.raw.split_once('=') {
            Some((lhs, rhs)) => (lhs.split_whitespace().collect(), Some(rhs.trim())),
            None => (self.raw.split_whitespace().collect(), None),
        }
    }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| Line { no: i + 1, raw: raw.trim() })
        .filter(|l| !l.raw.is_empty() && !l.raw.starts_with('#'))
        .collect()
}

fn check_name(line: &Line<'_>, name: &str) -> Result<String, ParseError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "*+=#".contains(c)) {
        return Err(err_at(line.no, line.raw, name, format!("illegal name `{name}`")));
    }
    Ok(name.to_string())
}

fn parse_terms(line: &Line<'_>, rhs: &str) -> Result<Terms, ParseError> {
    let mut acc: BTreeMap<String, Rational> = BTreeMap::new();
    if rhs == "0" {
        return Ok(Vec::new());
    }
    for piece in rhs.split('+') {
        let piece = piece.trim();
        let (coeff, name) = piece.split_once('*').ok_or_else(|| {
            err_at(line.no, line.raw, piece, format!("expected `coeff*name`, found `{piece}`"))
        })?;
        let coeff: Rational = coeff
            .trim()
            .parse()
            .map_err(|_| err_at(line.no, line.raw, coeff, format!("`{}` is not a rational", coeff.trim())))?;
        let name = check_name(line, name.trim())?;
        *acc.entry(name).or_insert_with(Rational::zero) += &coeff;
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn parse_integer<T: std::str::FromStr>(line: &Line<'_>, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse::<T>().map_err(|_| err_at(line.no, line.raw, tok, format!("`{tok}` is not {what}")))
}

fn parse_mode(line: &Line<'_>, tok: &str) -> Result<GradingMode, ParseError> {
    match tok {
        "Z" => Ok(GradingMode::Z),
        "Z2" => Ok(GradingMode::Z2),
        other => Err(err_at(line.no, line.raw, other, format!("unknown grading mode `{other}`"))),
    }
}

/// Raw pieces of one `graded-lie`-shaped block (also the factor blocks of a
/// knitted pair, under prefixed keywords).
#[derive(Default)]
struct AlgebraBlock {
    mode_line: Option<(usize, GradingMode)>,
    basis: Vec<(String, i64)>,
    brackets: Vec<(usize, String, String, Terms)>,
}

impl AlgebraBlock {
    /// Resolves the block against its own basis, with the same checks the
    /// core constructor performs but with line-accurate diagnostics.
    fn build(&self, mode: GradingMode, kind_line: usize) -> Result<GradedLieAlgebra, ParseError> {
        let basis = GradedBasis::new(self.basis.clone(), mode)
            .map_err(|e| err(kind_line, e.to_string()))?;
        let mut entries = Vec::new();
        let mut seen = BTreeMap::new();
        for (no, x, y, terms) in &self.brackets {
            let i = basis.index_of(x).map_err(|e| err(*no, e.to_string()))?;
            let j = basis.index_of(y).map_err(|e| err(*no, e.to_string()))?;
            if i > j {
                return Err(err(
                    *no,
                    format!("bracket [{x},{y}] is in the redundant upper half; list [{y},{x}] instead"),
                ));
            }
            if let Some(first) = seen.insert((i, j), *no) {
                return Err(err(*no, format!("bracket [{x},{y}] already given on line {first}")));
            }
            let want = mode.add(basis.degree(i), basis.degree(j));
            let mut v = GradedVector::zero();
            for (name, c) in terms {
                let k = basis.index_of(name).map_err(|e| err(*no, e.to_string()))?;
                if basis.degree(k) != want {
                    return Err(err(
                        *no,
                        format!(
                            "`{name}` has degree {}, but [{x},{y}] must land in degree {want}",
                            basis.degree(k)
                        ),
                    ));
                }
                v.add_term(k, c.clone());
            }
            if i == j && !v.is_zero() && mode.add(basis.degree(i), 0).rem_euclid(2) == 0 {
                return Err(err(*no, format!("diagonal bracket [{x},{x}] must be zero: even degree")));
            }
            entries.push(((i, j), v));
        }
        GradedLieAlgebra::new(basis, entries).map_err(|e| err(kind_line, e.to_string()))
    }
}

/// Raw pieces of one `group`-shaped block.
#[derive(Default)]
struct GroupBlock {
    elements: Vec<String>,
    identity: Option<(usize, String)>,
    rows: Vec<(usize, String, Vec<String>)>,
}

impl GroupBlock {
    fn build(&self, kind_line: usize) -> Result<FiniteGroup, ParseError> {
        let index_of = |no: usize, name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| err(no, format!("unknown element `{name}`")))
        };
        let (id_no, id_name) = self
            .identity
            .as_ref()
            .ok_or_else(|| err(kind_line, "missing `identity` line"))?;
        let identity = index_of(*id_no, id_name)?;

        let n = self.elements.len();
        let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
        for (no, name, entries) in &self.rows {
            let i = index_of(*no, name)?;
            if table[i].is_some() {
                return Err(err(*no, format!("row for `{name}` already given")));
            }
            if entries.len() != n {
                return Err(err(*no, format!("row for `{name}` has {} entries, expected {n}", entries.len())));
            }
            let row = entries.iter().map(|e| index_of(*no, e)).collect::<Result<_, _>>()?;
            table[i] = Some(row);
        }
        if let Some(missing) = table.iter().position(Option::is_none) {
            return Err(err(kind_line, format!("missing `row` line for `{}`", self.elements[missing])));
        }
        let table = table.into_iter().map(Option::unwrap).collect();
        FiniteGroup::new(self.elements.clone(), table, identity)
            .map_err(|e| err(kind_line, e.to_string()))
    }
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    kind_line: usize,
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut lines = significant_lines(text);
    if lines.is_empty() {
        return Err(err(1, "empty document; expected a `knit-manifest 1` header"));
    }

    let header = lines.remove(0);
    let (toks, rhs) = header.split();
    if toks.first() != Some(&"knit-manifest") || toks.len() != 2 || rhs.is_some() {
        return Err(err(header.no, "expected the header `knit-manifest 1`"));
    }
    let version: u32 = parse_integer(&header, toks[1], "a format version")?;
    if version != FORMAT_VERSION {
        return Err(err_at(
            header.no,
            header.raw,
            toks[1],
            format!("unsupported format version {version}; this tool reads version {FORMAT_VERSION}"),
        ));
    }

    if lines.is_empty() {
        return Err(err(header.no, "missing `kind` line"));
    }
    let kind = lines.remove(0);
    let (toks, rhs) = kind.split();
    if toks.first() != Some(&"kind") || toks.len() != 2 || rhs.is_some() {
        return Err(err(kind.no, "expected `kind <kind>` after the header"));
    }
    let kind_name = toks[1];
    let kind_line = kind.no;

    let mut unverified = false;
    let mut body_lines = Vec::new();
    for line in lines {
        if line.raw == "unverified" {
            if unverified {
                return Err(err(line.no, "duplicate `unverified` marker"));
            }
            unverified = true;
        } else {
            body_lines.push(line);
        }
    }

    let p = Parser { lines: body_lines, kind_line };
    let body = match kind_name {
        "graded-lie" => p.graded_lie()?,
        "group" => p.group()?,
        "knit-pair-lie" => p.pair_lie()?,
        "knit-pair-group" => p.pair_group()?,
        "map" => p.map()?,
        "quadruple" => p.quadruple()?,
        other => {
            return Err(err_at(kind.no, kind.raw, other, format!("unknown manifest kind `{other}`")))
        }
    };
    Ok(Document { body, unverified })
}

impl<'a> Parser<'a> {
    fn unknown(&self, line: &Line<'_>, keyword: &str) -> ParseError {
        err_at(line.no, line.raw, keyword, format!("unknown field `{keyword}` for this kind"))
    }

    fn wrong_shape(&self, line: &Line<'_>, want: &str) -> ParseError {
        err(line.no, format!("expected `{want}`"))
    }

    fn graded_lie(&self) -> Result<Body, ParseError> {
        let mut block = AlgebraBlock::default();
        for line in &self.lines {
            self.algebra_field(line, "", &mut block)?;
        }
        let (_, mode) = block
            .mode_line
            .ok_or_else(|| err(self.kind_line, "missing `mode` line"))?;
        Ok(Body::GradedLie(block.build(mode, self.kind_line)?))
    }

    /// Consumes one line of an algebra block whose keywords carry `prefix`
    /// (empty, `a.`, or `b.`). Returns false if the keyword is not part of
    /// such a block.
    fn algebra_field_opt(
        &self,
        line: &Line<'a>,
        prefix: &str,
        block: &mut AlgebraBlock,
    ) -> Result<bool, ParseError> {
        let (toks, rhs) = line.split();
        let Some(&keyword) = toks.first() else { return Ok(false) };
        if keyword == "mode" && prefix.is_empty() {
            if toks.len() != 2 || rhs.is_some() {
                return Err(self.wrong_shape(line, "mode Z|Z2"));
            }
            if block.mode_line.is_some() {
                return Err(err(line.no, "duplicate `mode` line"));
            }
            block.mode_line = Some((line.no, parse_mode(line, toks[1])?));
            return Ok(true);
        }
        if keyword == format!("{prefix}basis") {
            if toks.len() != 3 || rhs.is_some() {
                return Err(self.wrong_shape(line, &format!("{prefix}basis <name> <degree>")));
            }
            let name = check_name(line, toks[1])?;
            let degree = parse_integer(line, toks[2], "an integer degree")?;
            block.basis.push((name, degree));
            return Ok(true);
        }
        if keyword == format!("{prefix}bracket") {
            let (Some(rhs), 3) = (rhs, toks.len()) else {
                return Err(self.wrong_shape(line, &format!("{prefix}bracket <x> <y> = <terms>")));
            };
            let x = check_name(line, toks[1])?;
            let y = check_name(line, toks[2])?;
            block.brackets.push((line.no, x, y, parse_terms(line, rhs)?));
            return Ok(true);
        }
        Ok(false)
    }

    fn algebra_field(
        &self,
        line: &Line<'a>,
        prefix: &str,
        block: &mut AlgebraBlock,
    ) -> Result<(), ParseError> {
        if self.algebra_field_opt(line, prefix, block)? {
            Ok(())
        } else {
            let (toks, _) = line.split();
            Err(self.unknown(line, toks.first().unwrap_or(&"")))
        }
    }

    fn group(&self) -> Result<Body, ParseError> {
        let mut block = GroupBlock::default();
        for line in &self.lines {
            self.group_field(line, "", &mut block)?;
        }
        Ok(Body::Group(block.build(self.kind_line)?))
    }

    fn group_field_opt(
        &self,
        line: &Line<'a>,
        prefix: &str,
        block: &mut GroupBlock,
    ) -> Result<bool, ParseError> {
        let (toks, rhs) = line.split();
        let Some(&keyword) = toks.first() else { return Ok(false) };
        if keyword == format!("{prefix}element") {
            if toks.len() != 2 || rhs.is_some() {
                return Err(self.wrong_shape(line, &format!("{prefix}element <name>")));
            }
            block.elements.push(check_name(line, toks[1])?);
            return Ok(true);
        }
        if keyword == format!("{prefix}identity") {
            if toks.len() != 2 || rhs.is_some() {
                return Err(self.wrong_shape(line, &format!("{prefix}identity <name>")));
            }
            if block.identity.is_some() {
                return Err(err(line.no, format!("duplicate `{prefix}identity` line")));
            }
            block.identity = Some((line.no, check_name(line, toks[1])?));
            return Ok(true);
        }
        if keyword == format!("{prefix}row") {
            let (Some(rhs), 2) = (rhs, toks.len()) else {
                return Err(self.wrong_shape(line, &format!("{prefix}row <name> = <products>")));
            };
            let name = check_name(line, toks[1])?;
            let entries = rhs
                .split_whitespace()
                .map(|t| check_name(line, t))
                .collect::<Result<_, _>>()?;
            block.rows.push((line.no, name, entries));
            return Ok(true);
        }
        Ok(false)
    }

    fn group_field(
        &self,
        line: &Line<'a>,
        prefix: &str,
        block: &mut GroupBlock,
    ) -> Result<(), ParseError> {
        if self.group_field_opt(line, prefix, block)? {
            Ok(())
        } else {
            let (toks, _) = line.split();
            Err(self.unknown(line, toks.first().unwrap_or(&"")))
        }
    }

    fn pair_lie(&self) -> Result<Body, ParseError> {
        let mut a = AlgebraBlock::default();
        let mut b = AlgebraBlock::default();
        let mut actions: Vec<(&Line<'a>, bool, String, String, Terms)> = Vec::new();
        for line in &self.lines {
            let (toks, rhs) = line.split();
            if toks.first() == Some(&"mode") {
                if toks.len() != 2 || rhs.is_some() {
                    return Err(self.wrong_shape(line, "mode Z|Z2"));
                }
                if a.mode_line.is_some() {
                    return Err(err(line.no, "duplicate `mode` line"));
                }
                a.mode_line = Some((line.no, parse_mode(line, toks[1])?));
                continue;
            }
            if self.algebra_field_opt(line, "a.", &mut a)? || self.algebra_field_opt(line, "b.", &mut b)? {
                continue;
            }
            match *toks.first().unwrap_or(&"") {
                k @ ("alpha" | "beta") => {
                    let (Some(rhs), 3) = (rhs, toks.len()) else {
                        return Err(self.wrong_shape(line, &format!("{k} <x> <y> = <terms>")));
                    };
                    let x = check_name(line, toks[1])?;
                    let y = check_name(line, toks[2])?;
                    actions.push((line, k == "alpha", x, y, parse_terms(line, rhs)?));
                }
                other => return Err(self.unknown(line, other)),
            }
        }

        let (_, mode) = a.mode_line.ok_or_else(|| err(self.kind_line, "missing `mode` line"))?;
        let a_alg = a.build(mode, self.kind_line)?;
        let b_alg = b.build(mode, self.kind_line)?;
        let (a_basis, b_basis) = (a_alg.basis().clone(), b_alg.basis().clone());

        // alpha[i] acts on B, beta[j] acts on A; missing lines are zero.
        let mut alpha_cols: Vec<Vec<GradedVector>> =
            vec![vec![GradedVector::zero(); b_basis.len()]; a_basis.len()];
        let mut beta_cols: Vec<Vec<GradedVector>> =
            vec![vec![GradedVector::zero(); a_basis.len()]; b_basis.len()];
        let mut seen: BTreeMap<(bool, usize, usize), usize> = BTreeMap::new();
        for (line, is_alpha, x, y, terms) in actions {
            let (acting, space, cols) = if is_alpha {
                (&a_basis, &b_basis, &mut alpha_cols)
            } else {
                (&b_basis, &a_basis, &mut beta_cols)
            };
            let i = acting.index_of(&x).map_err(|e| err(line.no, e.to_string()))?;
            let j = space.index_of(&y).map_err(|e| err(line.no, e.to_string()))?;
            if let Some(first) = seen.insert((is_alpha, i, j), line.no) {
                return Err(err(
                    line.no,
                    format!("action value for ({x}, {y}) already given on line {first}"),
                ));
            }
            let want = mode.add(acting.degree(i), space.degree(j));
            let mut v = GradedVector::zero();
            for (name, c) in terms {
                let k = space.index_of(&name).map_err(|e| err(line.no, e.to_string()))?;
                if space.degree(k) != want {
                    return Err(err(
                        line.no,
                        format!(
                            "`{name}` has degree {}, but this value must land in degree {want}",
                            space.degree(k)
                        ),
                    ));
                }
                v.add_term(k, c);
            }
            cols[i][j] = v;
        }

        let alpha = alpha_cols
            .into_iter()
            .enumerate()
            .map(|(i, cols)| GradedLinearMap::endomorphism(&b_basis, a_basis.degree(i), cols))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(self.kind_line, e.to_string()))?;
        let beta = beta_cols
            .into_iter()
            .enumerate()
            .map(|(j, cols)| GradedLinearMap::endomorphism(&a_basis, b_basis.degree(j), cols))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(self.kind_line, e.to_string()))?;
        let pair = KnitPairLie::new(a_alg, b_alg, alpha, beta)
            .map_err(|e| err(self.kind_line, e.to_string()))?;
        Ok(Body::PairLie(pair))
    }

    fn pair_group(&self) -> Result<Body, ParseError> {
        let mut a = GroupBlock::default();
        let mut b = GroupBlock::default();
        let mut action_lines: Vec<(&Line<'a>, bool, String, Vec<String>)> = Vec::new();
        for line in &self.lines {
            if self.group_field_opt(line, "a.", &mut a)? || self.group_field_opt(line, "b.", &mut b)? {
                continue;
            }
            let (toks, rhs) = line.split();
            match *toks.first().unwrap_or(&"") {
                k @ ("alpha" | "beta") => {
                    let (Some(rhs), 2) = (rhs, toks.len()) else {
                        return Err(self.wrong_shape(line, &format!("{k} <name> = <images>")));
                    };
                    let name = check_name(line, toks[1])?;
                    let entries = rhs
                        .split_whitespace()
                        .map(|t| check_name(line, t))
                        .collect::<Result<_, _>>()?;
                    action_lines.push((line, k == "alpha", name, entries));
                }
                other => return Err(self.unknown(line, other)),
            }
        }

        let a_grp = a.build(self.kind_line)?;
        let b_grp = b.build(self.kind_line)?;
        let (na, nb) = (a_grp.order(), b_grp.order());

        // alpha rows are indexed by B (the acting element), beta rows by A.
        let mut alpha: Vec<Option<Vec<usize>>> = vec![None; nb];
        let mut beta_rows: Vec<Option<Vec<usize>>> = vec![None; na];
        for (line, is_alpha, name, entries) in action_lines {
            let (acting, space, rows, label) = if is_alpha {
                (&b_grp, &a_grp, &mut alpha, "alpha")
            } else {
                (&a_grp, &b_grp, &mut beta_rows, "beta")
            };
            let i = acting.index_of(&name).map_err(|e| err(line.no, e.to_string()))?;
            if rows[i].is_some() {
                return Err(err(line.no, format!("duplicate `{label}` row for `{name}`")));
            }
            if entries.len() != space.order() {
                return Err(err(
                    line.no,
                    format!("`{label}` row has {} images, expected {}", entries.len(), space.order()),
                ));
            }
            let row = entries
                .iter()
                .map(|e| space.index_of(e).map_err(|e| err(line.no, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            rows[i] = Some(row);
        }
        for (rows, acting, label) in
            [(&alpha, &b_grp, "alpha"), (&beta_rows, &a_grp, "beta")]
        {
            if let Some(i) = rows.iter().position(Option::is_none) {
                return Err(err(
                    self.kind_line,
                    format!("missing `{label}` row for `{}`", acting.name(i)),
                ));
            }
        }
        let alpha: Vec<Vec<usize>> = alpha.into_iter().map(Option::unwrap).collect();
        // manifest beta rows are per acting a; storage is beta[b][a]
        let beta_rows: Vec<Vec<usize>> = beta_rows.into_iter().map(Option::unwrap).collect();
        let beta = (0..nb).map(|j| (0..na).map(|i| beta_rows[i][j]).collect()).collect();
        let pair = KnitPairGroup::new(a_grp, b_grp, alpha, beta)
            .map_err(|e| err(self.kind_line, e.to_string()))?;
        Ok(Body::PairGroup(pair))
    }

    fn variant(&self) -> Result<(&str, usize, Vec<&Line<'a>>), ParseError> {
        let mut variant = None;
        let mut rest = Vec::new();
        for line in &self.lines {
            let (toks, rhs) = line.split();
            if toks.first() == Some(&"variant") {
                if toks.len() != 2 || rhs.is_some() {
                    return Err(self.wrong_shape(line, "variant lie|group"));
                }
                if variant.is_some() {
                    return Err(err(line.no, "duplicate `variant` line"));
                }
                variant = Some((toks[1], line.no));
            } else {
                rest.push(line);
            }
        }
        let (v, no) =
            variant.ok_or_else(|| err(self.kind_line, "missing `variant` line"))?;
        if v != "lie" && v != "group" {
            return Err(err(no, format!("unknown variant `{v}`; expected `lie` or `group`")));
        }
        Ok((v, no, rest))
    }

    fn map(&self) -> Result<Body, ParseError> {
        let (variant, _, lines) = self.variant()?;
        if variant == "lie" {
            self.map_lie(lines)
        } else {
            self.map_group(lines)
        }
    }

    fn map_lie(&self, lines: Vec<&Line<'a>>) -> Result<Body, ParseError> {
        let mut mode_line = None;
        let mut shift_line = None;
        let mut source = Vec::new();
        let mut target = Vec::new();
        let mut columns: Vec<(usize, String, Terms)> = Vec::new();
        for line in lines {
            let (toks, rhs) = line.split();
            match *toks.first().unwrap_or(&"") {
                "mode" => {
                    if toks.len() != 2 || rhs.is_some() {
                        return Err(self.wrong_shape(line, "mode Z|Z2"));
                    }
                    if mode_line.is_some() {
                        return Err(err(line.no, "duplicate `mode` line"));
                    }
                    mode_line = Some(parse_mode(line, toks[1])?);
                }
                "shift" => {
                    if toks.len() != 2 || rhs.is_some() {
                        return Err(self.wrong_shape(line, "shift <integer>"));
                    }
                    if shift_line.is_some() {
                        return Err(err(line.no, "duplicate `shift` line"));
                    }
                    shift_line = Some(parse_integer::<i64>(line, toks[1], "an integer shift")?);
                }
                k @ ("source" | "target") => {
                    if toks.len() != 3 || rhs.is_some() {
                        return Err(self.wrong_shape(line, &format!("{k} <name> <degree>")));
                    }
                    let name = check_name(line, toks[1])?;
                    let degree = parse_integer(line, toks[2], "an integer degree")?;
                    if k == "source" { &mut source } else { &mut target }.push((name, degree));
                }
                "column" => {
                    let (Some(rhs), 2) = (rhs, toks.len()) else {
                        return Err(self.wrong_shape(line, "column <source-name> = <terms>"));
                    };
                    columns.push((line.no, check_name(line, toks[1])?, parse_terms(line, rhs)?));
                }
                other => return Err(self.unknown(line, other)),
            }
        }

        let mode = mode_line.ok_or_else(|| err(self.kind_line, "missing `mode` line"))?;
        let shift = shift_line.ok_or_else(|| err(self.kind_line, "missing `shift` line"))?;
        let source =
            GradedBasis::new(source, mode).map_err(|e| err(self.kind_line, e.to_string()))?;
        let target =
            GradedBasis::new(target, mode).map_err(|e| err(self.kind_line, e.to_string()))?;

        let mut cols = vec![GradedVector::zero(); source.len()];
        let mut seen = vec![false; source.len()];
        for (no, name, terms) in columns {
            let j = source.index_of(&name).map_err(|e| err(no, e.to_string()))?;
            if seen[j] {
                return Err(err(no, format!("duplicate `column` line for `{name}`")));
            }
            seen[j] = true;
            let want = mode.add(source.degree(j), shift);
            let mut v = GradedVector::zero();
            for (tname, c) in terms {
                let k = target.index_of(&tname).map_err(|e| err(no, e.to_string()))?;
                if target.degree(k) != want {
                    return Err(err(
                        no,
                        format!(
                            "`{tname}` has degree {}, but this column must land in degree {want}",
                            target.degree(k)
                        ),
                    ));
                }
                v.add_term(k, c);
            }
            cols[j] = v;
        }
        let map = GradedLinearMap::new(source, target, shift, cols)
            .map_err(|e| err(self.kind_line, e.to_string()))?;
        Ok(Body::MapLie(map))
    }

    fn map_group(&self, lines: Vec<&Line<'a>>) -> Result<Body, ParseError> {
        let mut source = Vec::new();
        let mut target = Vec::new();
        let mut images: Vec<(usize, String, String)> = Vec::new();
        for line in lines {
            let (toks, rhs) = line.split();
            match *toks.first().unwrap_or(&"") {
                k @ ("source" | "target") => {
                    if toks.len() != 2 || rhs.is_some() {
                        return Err(self.wrong_shape(line, &format!("{k} <name>")));
                    }
                    let name = check_name(line, toks[1])?;
                    let list = if k == "source" { &mut source } else { &mut target };
                    if list.contains(&name) {
                        return Err(err(line.no, format!("duplicate {k} element `{name}`")));
                    }
                    list.push(name);
                }
                "image" => {
                    let (Some(rhs), 2) = (rhs, toks.len()) else {
                        return Err(self.wrong_shape(line, "image <source-name> = <target-name>"));
                    };
                    images.push((line.no, check_name(line, toks[1])?, check_name(line, rhs)?));
                }
                other => return Err(self.unknown(line, other)),
            }
        }
        let mut resolved: BTreeMap<String, String> = BTreeMap::new();
        for (no, from, to) in images {
            if !source.contains(&from) {
                return Err(err(no, format!("unknown source element `{from}`")));
            }
            if !target.contains(&to) {
                return Err(err(no, format!("unknown target element `{to}`")));
            }
            if resolved.insert(from.clone(), to).is_some() {
                return Err(err(no, format!("duplicate `image` line for `{from}`")));
            }
        }
        if let Some(missing) = source.iter().find(|s| !resolved.contains_key(*s)) {
            return Err(err(self.kind_line, format!("missing `image` line for `{missing}`")));
        }
        Ok(Body::MapGroup(NamedMap {
            source,
            target,
            images: resolved.into_iter().collect(),
        }))
    }

    fn quadruple(&self) -> Result<Body, ParseError> {
        let (variant, _, lines) = self.variant()?;
        if variant == "lie" {
            let mut doc: QuadDoc<Terms> = QuadDoc::default();
            for line in lines {
                let (toks, rhs) = line.split();
                let section = self.quad_section(line, &toks, &mut doc)?;
                let (Some(rhs), 2) = (rhs, toks.len()) else {
                    return Err(self.wrong_shape(line, &format!("{} <name> = <terms>", toks[0])));
                };
                let name = check_name(line, toks[1])?;
                self.quad_insert(line, section, name, parse_terms(line, rhs)?)?;
            }
            Ok(Body::QuadLie(doc))
        } else {
            let mut doc: QuadDoc<String> = QuadDoc::default();
            for line in lines {
                let (toks, rhs) = line.split();
                let section = self.quad_section(line, &toks, &mut doc)?;
                let (Some(rhs), 2) = (rhs, toks.len()) else {
                    return Err(self.wrong_shape(line, &format!("{} <name> = <image>", toks[0])));
                };
                let name = check_name(line, toks[1])?;
                let image = check_name(line, rhs)?;
                self.quad_insert(line, section, name, image)?;
            }
            Ok(Body::QuadGroup(doc))
        }
    }

    fn quad_section<'d, V>(
        &self,
        line: &Line<'_>,
        toks: &[&str],
        doc: &'d mut QuadDoc<V>,
    ) -> Result<&'d mut Vec<(String, V)>, ParseError> {
        match *toks.first().unwrap_or(&"") {
            "f" => Ok(&mut doc.f),
            "g" => Ok(&mut doc.g),
            "phi" => Ok(&mut doc.phi),
            "psi" => Ok(&mut doc.psi),
            other => Err(self.unknown(line, other)),
        }
    }

    fn quad_insert<V>(
        &self,
        line: &Line<'_>,
        section: &mut Vec<(String, V)>,
        name: String,
        value: V,
    ) -> Result<(), ParseError> {
        match section.binary_search_by(|(n, _)| n.as_str().cmp(&name)) {
            Ok(_) => Err(err(line.no, format!("duplicate line for `{name}` in this section"))),
            Err(pos) => {
                section.insert(pos, (name, value));
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// resolution of name-level documents against live pairs

fn resolve_columns(
    doc: &[(String, Terms)],
    source: &GradedBasis,
    target: &GradedBasis,
    which: &str,
) -> Result<GradedLinearMap, String> {
    let mut cols = vec![GradedVector::zero(); source.len()];
    for (name, terms) in doc {
        let j = source
            .index_of(name)
            .map_err(|_| format!("{which}: unknown source basis element `{name}`"))?;
        let mut v = GradedVector::zero();
        for (tname, c) in terms {
            let k = target
                .index_of(tname)
                .map_err(|_| format!("{which}: unknown target basis element `{tname}`"))?;
            v.add_term(k, c.clone());
        }
        cols[j] = v;
    }
    GradedLinearMap::new(source.clone(), target.clone(), 0, cols)
        .map_err(|e| format!("{which}: {e}"))
}

/// Resolves a lie quadruple document against source and destination pairs.
/// Omitted columns are zero.
pub fn resolve_lie_quadruple(
    doc: &QuadDoc<Terms>,
    src: &KnitPairLie,
    dst: &KnitPairLie,
) -> Result<LieHomQuadruple, String> {
    let f = resolve_columns(&doc.f, src.a().basis(), dst.a().basis(), "f")?;
    let g = resolve_columns(&doc.g, src.b().basis(), dst.b().basis(), "g")?;
    let phi = resolve_columns(&doc.phi, src.a().basis(), dst.b().basis(), "phi")?;
    let psi = resolve_columns(&doc.psi, src.b().basis(), dst.a().basis(), "psi")?;
    LieHomQuadruple::new(f, g, phi, psi).map_err(|e| e.to_string())
}

fn resolve_images(
    doc: &[(String, String)],
    source: &FiniteGroup,
    target: &FiniteGroup,
    which: &str,
) -> Result<GroupMap, String> {
    let mut images = vec![None; source.order()];
    for (name, image) in doc {
        let i = source
            .index_of(name)
            .map_err(|_| format!("{which}: unknown source element `{name}`"))?;
        let k = target
            .index_of(image)
            .map_err(|_| format!("{which}: unknown target element `{image}`"))?;
        images[i] = Some(k);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| format!("{which}: missing image for `{}`", source.name(i))))
        .collect::<Result<Vec<_>, _>>()?;
    GroupMap::new(source.clone(), target.clone(), images).map_err(|e| format!("{which}: {e}"))
}

/// Resolves a group quadruple document against source and destination pairs.
/// All four maps must be total.
pub fn resolve_group_quadruple(
    doc: &QuadDoc<String>,
    src: &KnitPairGroup,
    dst: &KnitPairGroup,
) -> Result<GroupHomQuadruple, String> {
    let f = resolve_images(&doc.f, src.a(), dst.a(), "f")?;
    let g = resolve_images(&doc.g, src.b(), dst.b(), "g")?;
    let phi = resolve_images(&doc.phi, src.b(), dst.a(), "phi")?;
    let psi = resolve_images(&doc.psi, src.a(), dst.b(), "psi")?;
    GroupHomQuadruple::new(f, g, phi, psi).map_err(|e| e.to_string())
}

/// The name-level document of a group map, for emission.
pub fn named_map(map: &GroupMap) -> NamedMap {
    let mut images: Vec<(String, String)> = map
        .images()
        .iter()
        .enumerate()
        .map(|(i, &k)| (map.source().name(i).to_string(), map.target().name(k).to_string()))
        .collect();
    images.sort();
    NamedMap {
        source: map.source().elements().map(str::to_string).collect(),
        target: map.target().elements().map(str::to_string).collect(),
        images,
    }
}

// ---------------------------------------------------------------------------
// emission

fn render_terms(terms: &[(String, Rational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|(n, c)| format!("{c}*{n}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Name-sorted terms of a vector against a basis (for map documents).
fn named_terms(v: &GradedVector, basis: &GradedBasis) -> Terms {
    let mut terms: Terms =
        v.iter().map(|(k, c)| (basis.name(k).to_string(), c.clone())).collect();
    terms.sort_by(|(a, _), (b, _)| a.cmp(b));
    terms
}

struct Emitter {
    out: String,
}

impl Emitter {
    fn new(kind: &str) -> Self {
        Emitter { out: format!("knit-manifest {FORMAT_VERSION}\nkind {kind}\n") }
    }

    fn line(&mut self, s: String) {
        self.out.push_str(&s);
        self.out.push('\n');
    }

    fn algebra(&mut self, alg: &GradedLieAlgebra, prefix: &str, with_mode: bool) {
        if with_mode {
            self.line(format!("mode {}", alg.basis().mode()));
        }
        for (name, degree) in alg.basis().entries() {
            self.line(format!("{prefix}basis {name} {degree}"));
        }
        for (i, j, v) in alg.structure_iter() {
            self.line(format!(
                "{prefix}bracket {} {} = {}",
                alg.basis().name(i),
                alg.basis().name(j),
                v.render(alg.basis())
            ));
        }
    }

    fn group(&mut self, g: &FiniteGroup, prefix: &str) {
        for name in g.elements() {
            self.line(format!("{prefix}element {name}"));
        }
        self.line(format!("{prefix}identity {}", g.name(g.identity())));
        for i in 0..g.order() {
            let row: Vec<&str> = (0..g.order()).map(|j| g.name(g.mul(i, j))).collect();
            self.line(format!("{prefix}row {} = {}", g.name(i), row.join(" ")));
        }
    }

    fn quad_sections<V>(&mut self, doc: &QuadDoc<V>, render: impl Fn(&V) -> String) {
        for (label, section) in
            [("f", &doc.f), ("g", &doc.g), ("phi", &doc.phi), ("psi", &doc.psi)]
        {
            for (name, value) in section {
                self.line(format!("{label} {name} = {}", render(value)));
            }
        }
    }
}

pub fn emit(doc: &Document) -> String {
    let mut e = Emitter::new(doc.kind());
    match &doc.body {
        Body::GradedLie(alg) => e.algebra(alg, "", true),
        Body::Group(g) => e.group(g, ""),
        Body::PairLie(pair) => {
            e.line(format!("mode {}", pair.a().basis().mode()));
            e.algebra(pair.a(), "a.", false);
            e.algebra(pair.b(), "b.", false);
            let (a, b) = (pair.a().basis(), pair.b().basis());
            for (i, m) in pair.alpha().iter().enumerate() {
                for j in 0..b.len() {
                    if !m.column(j).is_zero() {
                        e.line(format!(
                            "alpha {} {} = {}",
                            a.name(i),
                            b.name(j),
                            m.column(j).render(b)
                        ));
                    }
                }
            }
            for (j, m) in pair.beta().iter().enumerate() {
                for i in 0..a.len() {
                    if !m.column(i).is_zero() {
                        e.line(format!(
                            "beta {} {} = {}",
                            b.name(j),
                            a.name(i),
                            m.column(i).render(a)
                        ));
                    }
                }
            }
        }
        Body::PairGroup(pair) => {
            e.group(pair.a(), "a.");
            e.group(pair.b(), "b.");
            for (j, row) in pair.alpha().iter().enumerate() {
                let images: Vec<&str> = row.iter().map(|&x| pair.a().name(x)).collect();
                e.line(format!("alpha {} = {}", pair.b().name(j), images.join(" ")));
            }
            for i in 0..pair.a().order() {
                let images: Vec<&str> =
                    (0..pair.b().order()).map(|j| pair.b().name(pair.beta()[j][i])).collect();
                e.line(format!("beta {} = {}", pair.a().name(i), images.join(" ")));
            }
        }
        Body::MapLie(map) => {
            e.line("variant lie".to_string());
            e.line(format!("mode {}", map.source().mode()));
            e.line(format!("shift {}", map.shift()));
            for (name, degree) in map.source().entries() {
                e.line(format!("source {name} {degree}"));
            }
            for (name, degree) in map.target().entries() {
                e.line(format!("target {name} {degree}"));
            }
            let mut cols: Vec<(String, Terms)> = (0..map.source().len())
                .filter(|&j| !map.column(j).is_zero())
                .map(|j| {
                    (map.source().name(j).to_string(), named_terms(map.column(j), map.target()))
                })
                .collect();
            cols.sort_by(|(a, _), (b, _)| a.cmp(b));
            for (name, terms) in cols {
                e.line(format!("column {name} = {}", render_terms(&terms)));
            }
        }
        Body::MapGroup(map) => {
            e.line("variant group".to_string());
            for name in &map.source {
                e.line(format!("source {name}"));
            }
            for name in &map.target {
                e.line(format!("target {name}"));
            }
            for (from, to) in &map.images {
                e.line(format!("image {from} = {to}"));
            }
        }
        Body::QuadLie(doc) => {
            e.line("variant lie".to_string());
            e.quad_sections(doc, |terms| render_terms(terms));
        }
        Body::QuadGroup(doc) => {
            e.line("variant group".to_string());
            e.quad_sections(doc, |img| img.clone());
        }
    }
    if doc.unverified {
        e.line("unverified".to_string());
    }
    e.out
}

/// The name-level quadruple document of a resolved lie quadruple (columns
/// rendered against the destination bases, names sorted).
pub fn lie_quad_doc(q: &LieHomQuadruple) -> QuadDoc<Terms> {
    let section = |m: &GradedLinearMap| {
        let mut lines: Vec<(String, Terms)> = (0..m.source().len())
            .filter(|&j| !m.column(j).is_zero())
            .map(|j| (m.source().name(j).to_string(), named_terms(m.column(j), m.target())))
            .collect();
        lines.sort_by(|(a, _), (b, _)| a.cmp(b));
        lines
    };
    QuadDoc {
        f: section(q.f()),
        g: section(q.g()),
        phi: section(q.phi()),
        psi: section(q.psi()),
    }
}

/// The name-level quadruple document of a resolved group quadruple.
pub fn group_quad_doc(q: &GroupHomQuadruple) -> QuadDoc<String> {
    let section = |m: &GroupMap| {
        let mut lines: Vec<(String, String)> = (0..m.source().order())
            .map(|i| (m.source().name(i).to_string(), m.target().name(m.image(i)).to_string()))
            .collect();
        lines.sort();
        lines
    };
    QuadDoc {
        f: section(q.f()),
        g: section(q.g()),
        phi: section(q.phi()),
        psi: section(q.psi()),
    }
}
