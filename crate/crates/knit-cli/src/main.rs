//! `knit` — construct and verify knit products of graded Lie algebras and
//! finite groups.
//!
//! Every subcommand reads manifests (see [`manifest`]), writes a canonical
//! result manifest to stdout (or `--out`), and writes a verification report
//! to stderr (or `--report`, as text or JSON). Output is deterministic:
//! repeated runs on the same inputs are byte-identical. Exit codes: 0 when
//! every verification passed, 1 when some law was violated, 2 on input or
//! usage errors.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knit_core::{
    assemble_group_hom, assemble_lie_hom, check_group_quadruple, check_lie_quadruple,
    decompose_group, decompose_lie, enumerate_knit_pairs, is_graded_lie_hom, FiniteGroup,
    GradedLieAlgebra, KnitPairGroup, KnitPairLie, SubgroupSelection, VerificationReport,
};
use knit_cli::manifest;
use manifest::{Body, Document};

#[derive(Parser)]
#[command(name = "knit", version, about = "Knit products of graded Lie algebras and finite groups")]
struct Cli {
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand)]
enum Family {
    /// Graded Lie algebras over the rationals.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Finite groups given by multiplication tables.
    #[command(subcommand)]
    Group(GroupCmd),
}

#[derive(Args)]
struct IoOpts {
    /// Write the result manifest to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the verification report to this file instead of stderr.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report_format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum LieCmd {
    /// Check the graded Lie laws of an algebra, or the knitting conditions
    /// of a pair.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Build the knit product algebra of a verified pair.
    Knit {
        file: PathBuf,
        /// Emit the product even when the pair fails verification; the
        /// output is marked `unverified`.
        #[arg(long)]
        allow_invalid: bool,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Split an algebra along two complementary subalgebras into a knitted
    /// pair.
    Decompose {
        file: PathBuf,
        /// Basis names of the first factor, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        /// Basis names of the second factor, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Check the homomorphism equations of a quadruple between two pairs.
    QuadCheck {
        src: PathBuf,
        dst: PathBuf,
        quad: PathBuf,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Assemble a quadruple into a map between the knit products and verify
    /// it is a homomorphism.
    HomAssemble {
        src: PathBuf,
        dst: PathBuf,
        quad: PathBuf,
        #[command(flatten)]
        io: IoOpts,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Check the group table laws, or the knit action conditions of a pair.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Build the knit product group of a verified pair.
    Knit {
        file: PathBuf,
        /// Emit the product even when the pair fails verification; the
        /// output is marked `unverified`.
        #[arg(long)]
        allow_invalid: bool,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Split a group along two subgroups with trivial intersection whose
    /// product exhausts it.
    Decompose {
        file: PathBuf,
        /// Element names of the first subgroup, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        /// Element names of the second subgroup, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Check the homomorphism equations of a quadruple between two pairs.
    QuadCheck {
        src: PathBuf,
        dst: PathBuf,
        quad: PathBuf,
        /// Fail with an input error unless f and g are homomorphisms,
        /// instead of checking the equations that presuppose it.
        #[arg(long)]
        assume_homs: bool,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Assemble a quadruple into a map between the knit products and verify
    /// it is a homomorphism.
    HomAssemble {
        src: PathBuf,
        dst: PathBuf,
        quad: PathBuf,
        #[command(flatten)]
        io: IoOpts,
    },
    /// List every knit pair structure on two groups, sorted by action
    /// tables.
    Enumerate {
        a_file: PathBuf,
        b_file: PathBuf,
        /// Keep at most this many pairs (applied after sorting).
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        io: IoOpts,
    },
}

/// An input or usage error: reported on stderr, exit code 2.
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn input<E: fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

/// What a subcommand produced: an optional result manifest, titled
/// verification reports, and an optional enumeration summary.
struct Outcome {
    manifest: Option<String>,
    reports: Vec<(&'static str, VerificationReport)>,
    summary: Option<(usize, bool)>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { manifest: None, reports: Vec::new(), summary: None }
    }

    fn all_passed(&self) -> bool {
        self.reports.iter().all(|(_, r)| r.passed())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, InputError> {
    let (outcome, io) = match cli.family {
        Family::Lie(cmd) => match cmd {
            LieCmd::Verify { file, io } => (lie_verify(&file)?, io),
            LieCmd::Knit { file, allow_invalid, io } => (lie_knit(&file, allow_invalid)?, io),
            LieCmd::Decompose { file, a, b, io } => (lie_decompose(&file, &a, &b)?, io),
            LieCmd::QuadCheck { src, dst, quad, io } => (lie_quad_check(&src, &dst, &quad)?, io),
            LieCmd::HomAssemble { src, dst, quad, io } => {
                (lie_hom_assemble(&src, &dst, &quad)?, io)
            }
        },
        Family::Group(cmd) => match cmd {
            GroupCmd::Verify { file, io } => (group_verify(&file)?, io),
            GroupCmd::Knit { file, allow_invalid, io } => (group_knit(&file, allow_invalid)?, io),
            GroupCmd::Decompose { file, a, b, io } => (group_decompose(&file, &a, &b)?, io),
            GroupCmd::QuadCheck { src, dst, quad, assume_homs, io } => {
                (group_quad_check(&src, &dst, &quad, assume_homs)?, io)
            }
            GroupCmd::HomAssemble { src, dst, quad, io } => {
                (group_hom_assemble(&src, &dst, &quad)?, io)
            }
            GroupCmd::Enumerate { a_file, b_file, limit, io } => {
                (group_enumerate(&a_file, &b_file, limit)?, io)
            }
        },
    };
    deliver(&outcome, &io)
}

// ---------------------------------------------------------------------------
// input loading

fn load(path: &Path) -> Result<Document, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    manifest::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn wrong_kind(path: &Path, found: &str, wanted: &str) -> InputError {
    InputError(format!("{}: expected a {wanted} manifest, found `{found}`", path.display()))
}

fn load_lie_pair(path: &Path) -> Result<KnitPairLie, InputError> {
    let doc = load(path)?;
    match doc.body {
        Body::PairLie(pair) => Ok(pair),
        _ => Err(wrong_kind(path, doc.kind(), "knit-pair-lie")),
    }
}

fn load_group_pair(path: &Path) -> Result<KnitPairGroup, InputError> {
    let doc = load(path)?;
    match doc.body {
        Body::PairGroup(pair) => Ok(pair),
        _ => Err(wrong_kind(path, doc.kind(), "knit-pair-group")),
    }
}

fn load_algebra(path: &Path) -> Result<GradedLieAlgebra, InputError> {
    let doc = load(path)?;
    match doc.body {
        Body::GradedLie(alg) => Ok(alg),
        _ => Err(wrong_kind(path, doc.kind(), "graded-lie")),
    }
}

fn load_group(path: &Path) -> Result<FiniteGroup, InputError> {
    let doc = load(path)?;
    match doc.body {
        Body::Group(g) => Ok(g),
        _ => Err(wrong_kind(path, doc.kind(), "group")),
    }
}

// ---------------------------------------------------------------------------
// lie subcommands

fn lie_verify(file: &Path) -> Result<Outcome, InputError> {
    let doc = load(file)?;
    let mut outcome = Outcome::new();
    let report = match &doc.body {
        Body::GradedLie(alg) => ("graded Lie laws", alg.verify_graded_lie()),
        Body::PairLie(pair) => ("knitted pair conditions", pair.verify_knit_pair()),
        _ => return Err(wrong_kind(file, doc.kind(), "graded-lie or knit-pair-lie")),
    };
    outcome.reports.push(report);
    outcome.manifest = Some(manifest::emit(&doc));
    Ok(outcome)
}

fn lie_knit(file: &Path, allow_invalid: bool) -> Result<Outcome, InputError> {
    let pair = load_lie_pair(file)?;
    let report = pair.verify_knit_pair();
    let mut outcome = Outcome::new();
    if report.passed() || allow_invalid {
        let product = pair.knit_product_unchecked().map_err(input)?;
        let doc = Document { body: Body::GradedLie(product), unverified: !report.passed() };
        outcome.manifest = Some(manifest::emit(&doc));
    }
    outcome.reports.push(("knitted pair conditions", report));
    Ok(outcome)
}

fn lie_decompose(file: &Path, a: &[String], b: &[String]) -> Result<Outcome, InputError> {
    let alg = load_algebra(file)?;
    let indices = |names: &[String]| -> Result<Vec<usize>, InputError> {
        names.iter().map(|n| alg.basis().index_of(n).map_err(input)).collect()
    };
    let pair = decompose_lie(&alg, &indices(a)?, &indices(b)?).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.reports.push(("knitted pair conditions", pair.verify_knit_pair()));
    outcome.manifest = Some(manifest::emit(&Document::verified(Body::PairLie(pair))));
    Ok(outcome)
}

fn load_lie_quadruple(
    quad: &Path,
    src: &KnitPairLie,
    dst: &KnitPairLie,
) -> Result<(knit_core::LieHomQuadruple, Document), InputError> {
    let doc = load(quad)?;
    let Body::QuadLie(qdoc) = &doc.body else {
        return Err(wrong_kind(quad, doc.kind(), "lie quadruple"));
    };
    let q = manifest::resolve_lie_quadruple(qdoc, src, dst)
        .map_err(|e| InputError(format!("{}: {e}", quad.display())))?;
    Ok((q, doc))
}

fn lie_quad_check(src: &Path, dst: &Path, quad: &Path) -> Result<Outcome, InputError> {
    let src_pair = load_lie_pair(src)?;
    let dst_pair = load_lie_pair(dst)?;
    let (q, doc) = load_lie_quadruple(quad, &src_pair, &dst_pair)?;
    let report = check_lie_quadruple(&src_pair, &dst_pair, &q).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.reports.push(("quadruple equations", report));
    outcome.manifest = Some(manifest::emit(&doc));
    Ok(outcome)
}

fn lie_hom_assemble(src: &Path, dst: &Path, quad: &Path) -> Result<Outcome, InputError> {
    let src_pair = load_lie_pair(src)?;
    let dst_pair = load_lie_pair(dst)?;
    let (q, _) = load_lie_quadruple(quad, &src_pair, &dst_pair)?;
    let map = assemble_lie_hom(&src_pair, &dst_pair, &q).map_err(input)?;
    let src_prod = src_pair.knit_product_unchecked().map_err(input)?;
    let dst_prod = dst_pair.knit_product_unchecked().map_err(input)?;
    let report = is_graded_lie_hom(&src_prod, &dst_prod, &map).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.reports.push(("assembled homomorphism", report));
    outcome.manifest = Some(manifest::emit(&Document::verified(Body::MapLie(map))));
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// group subcommands

fn group_verify(file: &Path) -> Result<Outcome, InputError> {
    let doc = load(file)?;
    let mut outcome = Outcome::new();
    let report = match &doc.body {
        Body::Group(g) => ("group table laws", g.verify_group_table()),
        Body::PairGroup(pair) => ("knit action conditions", pair.verify_knit_actions()),
        _ => return Err(wrong_kind(file, doc.kind(), "group or knit-pair-group")),
    };
    outcome.reports.push(report);
    outcome.manifest = Some(manifest::emit(&doc));
    Ok(outcome)
}

fn group_knit(file: &Path, allow_invalid: bool) -> Result<Outcome, InputError> {
    let pair = load_group_pair(file)?;
    let report = pair.verify_knit_actions();
    let mut outcome = Outcome::new();
    if report.passed() || allow_invalid {
        let product = pair.knit_group_product_unchecked().map_err(input)?;
        let doc = Document { body: Body::Group(product), unverified: !report.passed() };
        outcome.manifest = Some(manifest::emit(&doc));
    }
    outcome.reports.push(("knit action conditions", report));
    Ok(outcome)
}

fn group_decompose(file: &Path, a: &[String], b: &[String]) -> Result<Outcome, InputError> {
    let g = load_group(file)?;
    let members = |names: &[String]| -> Result<Vec<usize>, InputError> {
        names.iter().map(|n| g.index_of(n).map_err(input)).collect()
    };
    let a_sel = SubgroupSelection::new(g.clone(), members(a)?).map_err(input)?;
    let b_sel = SubgroupSelection::new(g.clone(), members(b)?).map_err(input)?;
    let pair = decompose_group(&g, &a_sel, &b_sel).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.reports.push(("knit action conditions", pair.verify_knit_actions()));
    outcome.manifest = Some(manifest::emit(&Document::verified(Body::PairGroup(pair))));
    Ok(outcome)
}

fn load_group_quadruple(
    quad: &Path,
    src: &KnitPairGroup,
    dst: &KnitPairGroup,
) -> Result<(knit_core::GroupHomQuadruple, Document), InputError> {
    let doc = load(quad)?;
    let Body::QuadGroup(qdoc) = &doc.body else {
        return Err(wrong_kind(quad, doc.kind(), "group quadruple"));
    };
    let q = manifest::resolve_group_quadruple(qdoc, src, dst)
        .map_err(|e| InputError(format!("{}: {e}", quad.display())))?;
    Ok((q, doc))
}

fn group_quad_check(
    src: &Path,
    dst: &Path,
    quad: &Path,
    assume_homs: bool,
) -> Result<Outcome, InputError> {
    let src_pair = load_group_pair(src)?;
    let dst_pair = load_group_pair(dst)?;
    let (q, doc) = load_group_quadruple(quad, &src_pair, &dst_pair)?;
    let report = check_group_quadruple(&src_pair, &dst_pair, &q, assume_homs).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.reports.push(("quadruple equations", report));
    outcome.manifest = Some(manifest::emit(&doc));
    Ok(outcome)
}

fn group_hom_assemble(src: &Path, dst: &Path, quad: &Path) -> Result<Outcome, InputError> {
    let src_pair = load_group_pair(src)?;
    let dst_pair = load_group_pair(dst)?;
    let (q, _) = load_group_quadruple(quad, &src_pair, &dst_pair)?;
    let (map, report) = assemble_group_hom(&src_pair, &dst_pair, &q).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.reports.push(("assembled homomorphism", report));
    outcome.manifest =
        Some(manifest::emit(&Document::verified(Body::MapGroup(manifest::named_map(&map)))));
    Ok(outcome)
}

fn group_enumerate(
    a_file: &Path,
    b_file: &Path,
    limit: Option<usize>,
) -> Result<Outcome, InputError> {
    let a = load_group(a_file)?;
    let b = load_group(b_file)?;
    let enumeration = enumerate_knit_pairs(&a, &b, limit).map_err(input)?;
    let mut outcome = Outcome::new();
    outcome.summary = Some((enumeration.pairs.len(), enumeration.truncated));
    let docs: Vec<String> = enumeration
        .pairs
        .into_iter()
        .map(|p| manifest::emit(&Document::verified(Body::PairGroup(p))))
        .collect();
    outcome.manifest = Some(docs.join("\n"));
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// output

fn deliver(outcome: &Outcome, io: &IoOpts) -> Result<ExitCode, InputError> {
    if let Some(text) = &outcome.manifest {
        match &io.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
    }
    let rendered = match io.report_format {
        ReportFormat::Text => render_text(outcome),
        ReportFormat::Json => render_json(outcome),
    };
    match &io.report {
        Some(path) => fs::write(path, &rendered)
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => eprint!("{rendered}"),
    }
    Ok(if outcome.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render_text(outcome: &Outcome) -> String {
    let mut out = String::new();
    for (title, report) in &outcome.reports {
        out.push_str(&format!("{title}: {report}"));
        if !out.ends_with('\n') {
            out.push('\n');
        }
    }
    if let Some((pairs, truncated)) = outcome.summary {
        let suffix = if truncated { " (truncated)" } else { "" };
        out.push_str(&format!("enumeration: {pairs} pairs{suffix}\n"));
    }
    out
}

fn render_json(outcome: &Outcome) -> String {
    let reports: Vec<serde_json::Value> = outcome
        .reports
        .iter()
        .map(|(title, r)| {
            serde_json::json!({
                "title": title,
                "passed": r.passed(),
                "checked": r.checked(),
                "violations": r
                    .violations()
                    .iter()
                    .map(|v| {
                        serde_json::json!({
                            "law": v.law,
                            "witness": v.witness,
                            "left": v.left,
                            "right": v.right,
                        })
                    })
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut root = serde_json::json!({ "reports": reports });
    if let Some((pairs, truncated)) = outcome.summary {
        root["summary"] = serde_json::json!({ "pairs": pairs, "truncated": truncated });
    }
    let mut text = serde_json::to_string_pretty(&root).expect("report serialization cannot fail");
    text.push('\n');
    text
}
