//! Command-line entry point: field inspection, code analysis, constacyclic
//! enumeration, frame classification, ETF verification/search, worked-example
//! reproduction, and the desk-scale census.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use galois_frames::ccyclic::{enumerate_constacyclic, ConstaSpec};
use galois_frames::census::{run_census, CensusGrid, CensusReport};
use galois_frames::code::{LinearCode, MinDistance};
use galois_frames::etf::{
    check_self_dual_setup, gram_oracle, search_rst, EtfCertificate, RstTriple,
};
use galois_frames::frame::FrameSystem;
use galois_frames::io::{matrix_from_json, matrix_from_text, matrix_to_json, matrix_to_text};
use galois_frames::{reproduce, Error, FieldCtx, FqMatrix};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "galois-frames",
    version,
    about = "Frames over finite fields under the l-Galois inner product"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite-field inspection.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Linear-code analysis: hulls, duals, systematic form, distance.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Constacyclic code enumeration.
    Ccyclic {
        #[command(subcommand)]
        cmd: CcyclicCmd,
    },
    /// Frame classification under the l-Galois sesquilinear form.
    Frame {
        #[command(subcommand)]
        cmd: FrameCmd,
    },
    /// ETF triple verification and exhaustive search.
    Etf {
        #[command(subcommand)]
        cmd: EtfCmd,
    },
    /// Regenerate a worked example and diff against the bundled expectation.
    Reproduce {
        /// Example name: 5.1.1 .. 5.3.3 or fig1.1 .. fig1.6.
        #[arg(long)]
        example: String,
    },
    /// Desk-scale census of self-dual constacyclic codes and ETF triples.
    Census {
        /// Comma-separated fields as p^e (default: 3^2,5^2,7^2,3^4).
        #[arg(long)]
        fields: Option<String>,
        /// Comma-separated even lengths (default: 2,4,6,8,10,12).
        #[arg(long)]
        ns: Option<String>,
        /// Comma-separated l values (default: all 0..e per field).
        #[arg(long)]
        ells: Option<String>,
        /// Comma-separated shift constants (default: all admissible).
        #[arg(long)]
        lambdas: Option<String>,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Print the field parameters and Conway modulus for F_{p^e}.
    Info {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: usize,
        /// Optionally report the l-Galois norm-group data too.
        #[arg(long)]
        ell: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Hull dimension and self-dual/LCD classification.
    Hull {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Generator matrix of the l-Galois dual.
    Dual {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Systematic form [I|A] with its column permutation.
    Sysform {
        #[arg(long)]
        gen: PathBuf,
    },
    /// Exact minimum distance, or an explicit refusal over budget.
    Mindist {
        #[arg(long)]
        gen: PathBuf,
        /// Maximum number of codewords to enumerate.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum CcyclicCmd {
    /// All lambda-constacyclic codes of length n over F_{p^e}.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        n: usize,
        /// Shift constant, e.g. z^2 or 1.
        #[arg(long)]
        lambda: String,
        /// Galois parameter for the hull columns.
        #[arg(long, default_value_t = 0)]
        ell: usize,
        /// Keep only the l-Galois self-dual codes.
        #[arg(long)]
        self_dual_only: bool,
    },
}

#[derive(Subcommand)]
enum FrameCmd {
    /// Classify the columns of a matrix as a frame / tight / ETF.
    Classify {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Subcommand)]
enum EtfCmd {
    /// Verify one (r,s,t) triple against a self-dual code's A matrix.
    Verify {
        /// Generator matrix file of the half-rate code.
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Triple as three comma-separated element tokens, e.g. z^4,0,z^10.
        #[arg(long)]
        rst: String,
    },
    /// Exhaustive (r,s,t) sweep through the Gram oracle.
    Search {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Restrict to nontrivial triples (r != 0, at least two nonzero).
        #[arg(long)]
        paper_filter: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = std::env::var_os("GALOIS_FRAMES_WORKERS") {
        // reserved worker-count knob; output never depends on it
        let ok = w
            .to_str()
            .and_then(|s| s.parse::<usize>().ok())
            .map(|n| n > 0);
        if ok != Some(true) {
            eprintln!("error: GALOIS_FRAMES_WORKERS must be a positive integer");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 for verification failures, 2 for usage/input errors.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSelfDual { .. }
        | Error::NotHalfRate { .. }
        | Error::DegenerateTriple(_)
        | Error::ConditionFailed { .. }
        | Error::NotScalar
        | Error::ZeroA
        | Error::NotANorm
        | Error::NotAFrame => 1,
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::Field { cmd } => field_cmd(cmd, cli.format),
        Cmd::Code { cmd } => code_cmd(cmd, cli.format),
        Cmd::Ccyclic { cmd } => ccyclic_cmd(cmd, cli.format),
        Cmd::Frame { cmd } => frame_cmd(cmd, cli.format),
        Cmd::Etf { cmd } => etf_cmd(cmd, cli.format),
        Cmd::Reproduce { example } => reproduce_cmd(example, cli.format),
        Cmd::Census {
            fields,
            ns,
            ells,
            lambdas,
        } => census_cmd(
            fields.as_deref(),
            ns.as_deref(),
            ells.as_deref(),
            lambdas.as_deref(),
            cli.format,
        ),
    }
}

fn field_cmd(cmd: &FieldCmd, format: Format) -> Result<ExitCode, Error> {
    let FieldCmd::Info { p, e, ell } = cmd;
    let ctx = FieldCtx::conway(*p, *e)?;
    let mut val = json!({
        "schema": galois_frames::io::SCHEMA_VERSION,
        "p": ctx.p(),
        "e": ctx.e(),
        "q": ctx.q(),
        "modulus": ctx.spec().modulus,
        "zeta": ctx.format_element(ctx.zeta()),
    });
    let mut text = format!(
        "F_{{{}^{}}}: q = {}, modulus coefficients {:?}, zeta = {}\n",
        ctx.p(),
        ctx.e(),
        ctx.q(),
        ctx.spec().modulus,
        ctx.format_element(ctx.zeta())
    );
    if let Some(l) = ell {
        ctx.check_ell(*l)?;
        let pl = ctx.p().pow(*l as u32);
        let d = gcd(pl + 1, ctx.q() - 1);
        val["ell"] = json!(l);
        val["norm_exponent"] = json!(pl + 1);
        val["norm_group_index"] = json!(d);
        text.push_str(&format!(
            "l = {l}: norm exponent p^l + 1 = {}, norm-group index {}\n",
            pl + 1,
            d
        ));
    }
    emit(format, &val, &text);
    Ok(ExitCode::SUCCESS)
}

fn code_cmd(cmd: &CodeCmd, format: Format) -> Result<ExitCode, Error> {
    match cmd {
        CodeCmd::Hull { gen, ell } => {
            let code = load_code(gen)?;
            let report = code.hull_dim(*ell)?;
            let val = json!({
                "schema": galois_frames::io::SCHEMA_VERSION,
                "n": code.length(),
                "k": code.dimension(),
                "ell": report.ell,
                "hull_dim": report.hull_dim,
                "class": report.class,
            });
            let text = format!(
                "[{},{}] code: h_{}(C) = {}, class {:?}\n",
                code.length(),
                code.dimension(),
                report.ell,
                report.hull_dim,
                report.class
            );
            emit(format, &val, &text);
            Ok(ExitCode::SUCCESS)
        }
        CodeCmd::Dual { gen, ell } => {
            let code = load_code(gen)?;
            let dual = code.galois_dual(*ell)?;
            emit_matrix(format, dual.gen());
            Ok(ExitCode::SUCCESS)
        }
        CodeCmd::Sysform { gen } => {
            let code = load_code(gen)?;
            let (a, perm) = code.systematic_form();
            let val = json!({
                "schema": galois_frames::io::SCHEMA_VERSION,
                "a": matrix_to_json(&a),
                "permutation": perm,
            });
            let text = format!("permutation: {perm:?}\n{}", matrix_to_text(&a));
            emit(format, &val, &text);
            Ok(ExitCode::SUCCESS)
        }
        CodeCmd::Mindist { gen, budget } => {
            let code = load_code(gen)?;
            match code.min_distance(*budget) {
                MinDistance::Exact(d) => {
                    let val = json!({
                        "schema": galois_frames::io::SCHEMA_VERSION,
                        "n": code.length(),
                        "k": code.dimension(),
                        "d": d,
                    });
                    emit(format, &val, &format!("d = {d}\n"));
                }
                MinDistance::BudgetExceeded => {
                    let val = json!({
                        "schema": galois_frames::io::SCHEMA_VERSION,
                        "n": code.length(),
                        "k": code.dimension(),
                        "d": null,
                        "budget_exceeded": true,
                    });
                    emit(
                        format,
                        &val,
                        &format!("refused: q^k exceeds the budget of {budget} codewords\n"),
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn ccyclic_cmd(cmd: &CcyclicCmd, format: Format) -> Result<ExitCode, Error> {
    let CcyclicCmd::Enumerate {
        p,
        e,
        n,
        lambda,
        ell,
        self_dual_only,
    } = cmd;
    let ctx = FieldCtx::conway(*p, *e)?;
    let lam = ctx.parse_element(lambda)?;
    let spec = ConstaSpec::new(&ctx, *n, lam)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for c in enumerate_constacyclic(&ctx, &spec)? {
        let report = c.code.hull_dim(*ell)?;
        let self_dual = 2 * c.dimension() == *n && report.hull_dim == c.dimension();
        if *self_dual_only && !self_dual {
            continue;
        }
        let g: Vec<String> =
            c.g.coeffs()
                .iter()
                .map(|&x| ctx.format_element(x))
                .collect();
        text.push_str(&format!(
            "g = [{}]  [{},{}]  h_{} = {}  self_dual = {}\n",
            g.join(", "),
            n,
            c.dimension(),
            ell,
            report.hull_dim,
            self_dual
        ));
        rows.push(json!({
            "g": g,
            "n": n,
            "k": c.dimension(),
            "hull_dim": report.hull_dim,
            "self_dual": self_dual,
        }));
    }
    emit(format, &json!(rows), &text);
    Ok(ExitCode::SUCCESS)
}

fn frame_cmd(cmd: &FrameCmd, format: Format) -> Result<ExitCode, Error> {
    let FrameCmd::Classify { phi, ell } = cmd;
    let m = load_matrix(phi)?;
    let system = FrameSystem::new(m, *ell)?;
    let class = system.classify()?;
    let val = serde_json::to_value(&class)?;
    let text = format!("{class:#?}\n");
    emit(format, &val, &text);
    Ok(ExitCode::SUCCESS)
}

fn etf_cmd(cmd: &EtfCmd, format: Format) -> Result<ExitCode, Error> {
    match cmd {
        EtfCmd::Verify { code, ell, rst } => {
            let c = load_code(code)?;
            let a_mat = check_self_dual_setup(&c, *ell)?;
            let triple = parse_rst(a_mat.ctx(), rst)?;
            let cert = gram_oracle(&a_mat, triple, *ell)?;
            let val = cert_json(&cert);
            let text = cert_text(&cert);
            emit(format, &val, &text);
            Ok(ExitCode::SUCCESS)
        }
        EtfCmd::Search {
            code,
            ell,
            paper_filter,
        } => {
            let c = load_code(code)?;
            let a_mat = check_self_dual_setup(&c, *ell)?;
            let certs = search_rst(&a_mat, *ell, *paper_filter)?;
            let vals: Vec<serde_json::Value> = certs.iter().map(cert_json).collect();
            let mut text = String::new();
            for cert in &certs {
                text.push_str(&cert_text(cert));
            }
            text.push_str(&format!("{} certificate(s)\n", certs.len()));
            emit(format, &json!(vals), &text);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn reproduce_cmd(example: &str, format: Format) -> Result<ExitCode, Error> {
    let outcome = reproduce::run(example)?;
    let val = serde_json::to_value(&outcome)?;
    let text = format!(
        "{}: a = {}, case {}, matches_expected = {}\n",
        outcome.report.example, outcome.report.a, outcome.report.case, outcome.matches_expected
    );
    emit(format, &val, &text);
    if outcome.matches_expected {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: regenerated report differs from the bundled expectation");
        Ok(ExitCode::from(1))
    }
}

fn census_cmd(
    fields: Option<&str>,
    ns: Option<&str>,
    ells: Option<&str>,
    lambdas: Option<&str>,
    format: Format,
) -> Result<ExitCode, Error> {
    let mut grid = CensusGrid::desk();
    if let Some(s) = fields {
        grid.fields = s.split(',').map(parse_field).collect::<Result<_, _>>()?;
    }
    if let Some(s) = ns {
        grid.ns = parse_usizes(s)?;
    }
    if let Some(s) = ells {
        grid.ells = Some(parse_usizes(s)?);
    }
    if let Some(s) = lambdas {
        grid.lambdas = Some(s.split(',').map(str::to_string).collect());
    }
    let report = run_census(&grid)?;
    let val = serde_json::to_value(&report)?;
    emit(format, &val, &census_text(&report));
    Ok(ExitCode::SUCCESS)
}

fn census_text(report: &CensusReport) -> String {
    let mut text = String::new();
    for pt in &report.points {
        text.push_str(&format!(
            "q={} n={} lambda={} ell={}: self_dual={} etf={}\n",
            pt.q, pt.n, pt.lambda, pt.ell, pt.self_dual_count, pt.etf_count
        ));
        for cert in &pt.certificates {
            text.push_str(&format!(
                "  g=[{}] (r,s,t)=({},{},{}) a={} case={} digest={}\n",
                cert.generator.join(","),
                cert.r,
                cert.s,
                cert.t,
                cert.a,
                cert.case.as_deref().unwrap_or("-"),
                cert.digest
            ));
        }
    }
    text.push_str(&format!(
        "totals: {} self-dual code(s), {} with a nontrivial triple\n",
        report.total_self_dual, report.total_etf
    ));
    text
}

fn cert_json(cert: &EtfCertificate) -> serde_json::Value {
    let ctx = cert.m.ctx();
    json!({
        "r": ctx.format_element(cert.triple.r),
        "s": ctx.format_element(cert.triple.s),
        "t": ctx.format_element(cert.triple.t),
        "ell": cert.ell,
        "a": ctx.format_element(cert.a),
        "b": "0",
        "c": ctx.format_element(cert.a),
        "case": cert.case.as_ref().map(|w| w.case.as_str()),
        "norm_witness": ctx.format_element(cert.norm_witness),
    })
}

fn cert_text(cert: &EtfCertificate) -> String {
    let ctx = cert.m.ctx();
    format!(
        "(r,s,t) = ({},{},{}): ({},0,{})_{} ETF, case {}\n",
        ctx.format_element(cert.triple.r),
        ctx.format_element(cert.triple.s),
        ctx.format_element(cert.triple.t),
        ctx.format_element(cert.a),
        ctx.format_element(cert.a),
        cert.ell,
        cert.case.as_ref().map_or("-", |w| w.case.as_str()),
    )
}

fn parse_rst(ctx: &Arc<FieldCtx>, rst: &str) -> Result<RstTriple, Error> {
    let toks: Vec<&str> = rst.split(',').map(str::trim).collect();
    if toks.len() != 3 {
        return Err(Error::Parse(format!(
            "--rst needs three comma-separated elements, got `{rst}`"
        )));
    }
    Ok(RstTriple {
        r: ctx.parse_element(toks[0])?,
        s: ctx.parse_element(toks[1])?,
        t: ctx.parse_element(toks[2])?,
    })
}

fn parse_field(tok: &str) -> Result<(u64, usize), Error> {
    let tok = tok.trim();
    let (p, e) = match tok.split_once('^') {
        Some((p, e)) => (
            p.parse().map_err(|_| bad_field(tok))?,
            e.parse().map_err(|_| bad_field(tok))?,
        ),
        None => (tok.parse().map_err(|_| bad_field(tok))?, 1),
    };
    Ok((p, e))
}

fn bad_field(tok: &str) -> Error {
    Error::Parse(format!("--fields entries must look like p^e, got `{tok}`"))
}

fn parse_usizes(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer, got `{t}`")))
        })
        .collect()
}

fn load_matrix(path: &PathBuf) -> Result<FqMatrix, Error> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        matrix_from_json(&serde_json::from_str(&text)?)
    } else {
        matrix_from_text(&text)
    }
}

fn load_code(path: &PathBuf) -> Result<LinearCode, Error> {
    LinearCode::new(load_matrix(path)?)
}

fn emit(format: Format, val: &serde_json::Value, text: &str) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(val).expect("serializable")
        ),
        Format::Text => print!("{text}"),
    }
}

fn emit_matrix(format: Format, m: &FqMatrix) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&matrix_to_json(m)).expect("serializable")
        ),
        Format::Text => print!("{}", matrix_to_text(m)),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
