//! `monocode` — monomial codes over F_q from the command line.
//!
//! Every subcommand prints deterministic JSON with sorted keys on stdout
//! (`--pretty` switches to a human-readable rendering). Exit codes:
//! 0 success, 1 worked-example mismatch, 2 precondition or parse failure,
//! 3 resource guard.

mod examples;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use monocode::codes::{decompose, LinearCode};
use monocode::gf::{Field, FieldElement};
use monocode::json as mj;
use monocode::linalg::Subspace;
use monocode::monomial::{MonomialMatrix, Permutation};
use monocode::structure::{
    centralizer, check_characteristic, coprime_block_centralizer, decompose_generalized,
};
use monocode::{Error, Result};

#[derive(Parser)]
#[command(
    name = "monocode",
    version,
    about = "Monomial codes over finite fields as invariant subspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of the monomial matrix and its
    /// factorization into monic irreducibles
    Factor(MatrixArgs),
    /// Minimal invariant subspaces: one kernel per irreducible factor
    Decompose(MatrixArgs),
    /// Every code spanned by a subset of the minimal components
    Enumerate(EnumerateArgs),
    /// The code for one component selection
    Code(SelectArgs),
    /// Exhaustive minimum distance of the selected code
    Distance(SelectArgs),
    /// Basis of the centralizer of the matrix
    Centralizer(MatrixArgs),
    /// Invariance, hyperinvariance and characteristic status of a subspace
    CheckCharacteristic(CheckArgs),
    /// Split an invariant subspace along the permutation cycles
    Generalized(BasisArgs),
    /// Centralizer report for coprime companion blocks
    CoprimeBlocks(CoprimeArgs),
    /// Replay the published worked examples and diff every displayed value
    PaperExamples(ExamplesArgs),
}

#[derive(Args, Clone)]
struct MatrixArgs {
    /// Field characteristic (prime)
    #[arg(long)]
    p: u64,
    /// Extension degree, q = p^m
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Code length
    #[arg(long)]
    n: usize,
    /// Associated vector: comma-separated field elements, one per column
    #[arg(long)]
    a: String,
    /// Permutation as disjoint cycles "(0 1 2)(3 4)" or one-line "[1,2,0]";
    /// defaults to the standard n-cycle
    #[arg(long)]
    sigma: Option<String>,
    /// Read cycle/one-line indices as 1-based
    #[arg(long)]
    one_based: bool,
    /// Human-readable output instead of JSON
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Leave out the zero code and the full space
    #[arg(long)]
    skip_trivial: bool,
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Component indices, comma-separated (e.g. "0,1")
    #[arg(long)]
    select: String,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Subspace basis: rows separated by ';', entries by ','
    #[arg(long)]
    basis: String,
    /// Sample budget for the randomized witness search
    #[arg(long, default_value_t = 4096)]
    budget: usize,
    /// Seed for the randomized witness search
    #[arg(long, default_value_t = 49374)]
    seed: u64,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Subspace basis: rows separated by ';', entries by ','
    #[arg(long)]
    basis: String,
}

#[derive(Args)]
struct CoprimeArgs {
    /// Field characteristic (prime)
    #[arg(long)]
    p: u64,
    /// Extension degree, q = p^m
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Monic blocks as companion polynomials: ascending coefficients
    /// including the leading 1, e.g. "3,0,1;2,1" for x^2+3 and x+2;
    /// blocks separated by ';'
    #[arg(long)]
    blocks: String,
    /// Human-readable output instead of JSON
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Machine-readable pass/fail per assertion
    #[arg(long)]
    json: bool,
    /// Sample budget for the witness search
    #[arg(long, default_value_t = 4096)]
    budget: usize,
    /// Seed for the witness search
    #[arg(long, default_value_t = 49374)]
    seed: u64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource_guard() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Factor(args) => cmd_factor(&args),
        Command::Decompose(args) => cmd_decompose(&args),
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Code(args) => cmd_code(&args),
        Command::Distance(args) => cmd_distance(&args),
        Command::Centralizer(args) => cmd_centralizer(&args),
        Command::CheckCharacteristic(args) => cmd_check_characteristic(&args),
        Command::Generalized(args) => cmd_generalized(&args),
        Command::CoprimeBlocks(args) => cmd_coprime_blocks(&args),
        Command::PaperExamples(args) => examples::run(&args),
    }
}

// ---- input parsing ----

fn parse_vector(field: &Field, s: &str, what: &str) -> Result<Vec<FieldElement>> {
    let mut out = Vec::new();
    let mut pos = 0usize;
    for tok in s.split(',') {
        let t = tok.trim();
        if t.is_empty() {
            return Err(Error::Parse {
                context: what.to_string(),
                token: tok.to_string(),
                position: pos,
            });
        }
        out.push(field.parse_element(t).map_err(|_| Error::Parse {
            context: what.to_string(),
            token: t.to_string(),
            position: pos,
        })?);
        pos += tok.len() + 1;
    }
    Ok(out)
}

fn parse_basis(field: &Field, n: usize, s: &str) -> Result<Subspace> {
    let mut rows = Vec::new();
    for row in s.split(';') {
        let v = parse_vector(field, row, "basis row")?;
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: v.len(),
            });
        }
        rows.push(v);
    }
    Ok(Subspace::from_rows(field, n, rows))
}

fn parse_selection(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = 0usize;
    for tok in s.split(',') {
        let t = tok.trim();
        out.push(t.parse::<usize>().map_err(|_| Error::Parse {
            context: "selection".into(),
            token: t.to_string(),
            position: pos,
        })?);
        pos += tok.len() + 1;
    }
    Ok(out)
}

struct Job {
    field: Field,
    matrix: MonomialMatrix,
}

fn build_job(args: &MatrixArgs) -> Result<Job> {
    let field = Field::new(args.p, args.m)?;
    let a = parse_vector(&field, &args.a, "associated vector")?;
    if a.len() != args.n {
        return Err(Error::LengthMismatch {
            expected: args.n,
            found: a.len(),
        });
    }
    let sigma = match &args.sigma {
        Some(s) => Permutation::parse(s, args.n, args.one_based)?,
        None => Permutation::standard_cycle(args.n),
    };
    let matrix = MonomialMatrix::build_general(a, sigma)?;
    Ok(Job { field, matrix })
}

// ---- output ----

fn emit(value: &Value, pretty_lines: Option<Vec<String>>) {
    match pretty_lines {
        Some(lines) => {
            for l in lines {
                println!("{l}");
            }
        }
        None => println!("{}", serde_json::to_string(value).expect("valid json")),
    }
}

fn job_fields(job: &Job) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("field".into(), mj::field_to_json(&job.field));
    obj.insert("n".into(), json!(job.matrix.n()));
    obj.insert("a".into(), mj::vector_to_json(job.matrix.coeffs()));
    obj.insert("sigma".into(), mj::permutation_to_json(job.matrix.sigma()));
    obj
}

fn fmt_rows(space: &Subspace) -> String {
    space
        .basis_rows()
        .iter()
        .map(|r| {
            let es: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            format!("({})", es.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

// ---- commands ----

fn cmd_factor(args: &MatrixArgs) -> Result<ExitCode> {
    let job = build_job(args)?;
    let decomposition = decompose(&job.matrix)?;
    let fac = decomposition.factorization();
    let mut obj = job_fields(&job);
    obj.insert(
        "char_poly".into(),
        mj::poly_to_json(decomposition.char_poly()),
    );
    obj.insert("unit".into(), json!(fac.unit.to_string()));
    obj.insert(
        "factors".into(),
        Value::Array(
            fac.factors
                .iter()
                .map(|(f, mult)| json!({ "poly": mj::poly_to_json(f), "multiplicity": mult }))
                .collect(),
        ),
    );
    let pretty = args.pretty.then(|| {
        let mut lines = vec![
            format!("field          F_{}^{}", job.field.p(), job.field.m()),
            format!("char poly      {}", decomposition.char_poly()),
            format!("unit           {}", fac.unit),
        ];
        for (i, (f, mult)) in fac.factors.iter().enumerate() {
            lines.push(format!("factor {i}       ({f})^{mult}"));
        }
        lines
    });
    emit(&Value::Object(obj), pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(args: &MatrixArgs) -> Result<ExitCode> {
    let job = build_job(args)?;
    let decomposition = decompose(&job.matrix)?;
    let mut obj = job_fields(&job);
    obj.insert(
        "char_poly".into(),
        mj::poly_to_json(decomposition.char_poly()),
    );
    obj.insert(
        "components".into(),
        Value::Array(
            decomposition
                .components()
                .iter()
                .map(|c| {
                    json!({
                        "index": c.index,
                        "factor": mj::poly_to_json(&c.factor),
                        "dim": c.space.dim(),
                        "basis": mj::subspace_to_json(&c.space),
                    })
                })
                .collect(),
        ),
    );
    let pretty = args.pretty.then(|| {
        let mut lines = vec![format!("char poly      {}", decomposition.char_poly())];
        for c in decomposition.components() {
            lines.push(format!(
                "W_{} = ker({})   dim {}   basis {}",
                c.index,
                c.factor,
                c.space.dim(),
                fmt_rows(&c.space)
            ));
        }
        lines
    });
    emit(&Value::Object(obj), pretty);
    Ok(ExitCode::SUCCESS)
}

fn code_pretty(code: &LinearCode) -> Vec<String> {
    let mut lines = vec![
        format!("[n, k] = [{}, {}]", code.n(), code.dim()),
        format!("selection      {:?}", code.selection()),
        format!("g(x)           {}", code.generator_poly()),
        format!("basis          {}", fmt_rows(code.space())),
    ];
    if let Some(d) = code.cached_distance() {
        lines.push(format!("d              {d}"));
    }
    lines
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<ExitCode> {
    let job = build_job(&args.matrix)?;
    let decomposition = decompose(&job.matrix)?;
    let codes = decomposition.enumerate_codes(!args.skip_trivial)?;
    let mut obj = job_fields(&job);
    obj.insert("count".into(), json!(codes.len()));
    obj.insert(
        "codes".into(),
        Value::Array(codes.iter().map(mj::code_to_json).collect()),
    );
    let pretty = args.matrix.pretty.then(|| {
        let mut lines = vec![format!("{} codes", codes.len())];
        for c in &codes {
            lines.push(format!(
                "selection {:?}  k = {}  g = {}  basis {}",
                c.selection(),
                c.dim(),
                c.generator_poly(),
                fmt_rows(c.space())
            ));
        }
        lines
    });
    emit(&Value::Object(obj), pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_code(args: &SelectArgs) -> Result<ExitCode> {
    let job = build_job(&args.matrix)?;
    let decomposition = decompose(&job.matrix)?;
    let code = decomposition.make_code(&parse_selection(&args.select)?)?;
    let pretty = args.matrix.pretty.then(|| code_pretty(&code));
    emit(&mj::code_to_json(&code), pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_distance(args: &SelectArgs) -> Result<ExitCode> {
    let job = build_job(&args.matrix)?;
    let decomposition = decompose(&job.matrix)?;
    let code = decomposition.make_code(&parse_selection(&args.select)?)?;
    code.min_distance()?;
    let pretty = args.matrix.pretty.then(|| code_pretty(&code));
    emit(&mj::code_to_json(&code), pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_centralizer(args: &MatrixArgs) -> Result<ExitCode> {
    let job = build_job(args)?;
    let cent = centralizer(job.matrix.matrix());
    let mut obj = job_fields(&job);
    obj.insert("dim".into(), json!(cent.dim()));
    obj.insert(
        "basis".into(),
        Value::Array(cent.basis().iter().map(mj::matrix_to_json).collect()),
    );
    let pretty = args.pretty.then(|| {
        let mut lines = vec![format!("centralizer dimension {}", cent.dim())];
        for (i, b) in cent.basis().iter().enumerate() {
            lines.push(format!("basis element {i}:"));
            for r in 0..b.rows() {
                let es: Vec<String> = b.row(r).iter().map(|e| e.to_string()).collect();
                lines.push(format!("  [{}]", es.join(" ")));
            }
        }
        lines
    });
    emit(&Value::Object(obj), pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_characteristic(args: &CheckArgs) -> Result<ExitCode> {
    let job = build_job(&args.matrix)?;
    let v = parse_basis(&job.field, job.matrix.n(), &args.basis)?;
    let report = check_characteristic(&v, job.matrix.matrix(), args.budget, args.seed);
    let value = mj::characteristic_report_to_json(&report);
    let pretty = args.matrix.pretty.then(|| {
        let mut lines = vec![
            format!("invariant      {}", report.invariant),
            format!("hyperinvariant {}", report.hyperinvariant),
            format!("characteristic {}", report.status.as_str()),
        ];
        if let Some(w) = &report.witness {
            lines.push("witness:".to_string());
            for r in 0..w.rows() {
                let es: Vec<String> = w.row(r).iter().map(|e| e.to_string()).collect();
                lines.push(format!("  [{}]", es.join(" ")));
            }
        }
        lines
    });
    emit(&value, pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_generalized(args: &BasisArgs) -> Result<ExitCode> {
    let job = build_job(&args.matrix)?;
    let c = parse_basis(&job.field, job.matrix.n(), &args.basis)?;
    let parts = decompose_generalized(&c, &job.matrix)?;
    let mut obj = job_fields(&job);
    obj.insert(
        "cycles".into(),
        Value::Array(
            job.matrix
                .sigma()
                .cycles()
                .iter()
                .map(|c| Value::Array(c.iter().map(|&j| json!(j)).collect()))
                .collect(),
        ),
    );
    obj.insert("dim".into(), json!(c.dim()));
    obj.insert(
        "components".into(),
        Value::Array(
            parts
                .iter()
                .map(|p| {
                    json!({
                        "cycle": p.cycle_index,
                        "dim": p.space.dim(),
                        "basis": mj::subspace_to_json(&p.space),
                    })
                })
                .collect(),
        ),
    );
    let pretty = args.matrix.pretty.then(|| {
        let mut lines = vec![format!(
            "dim C = {}, {} cycle components",
            c.dim(),
            parts.len()
        )];
        for p in &parts {
            lines.push(format!(
                "cycle {}  dim {}  basis {}",
                p.cycle_index,
                p.space.dim(),
                fmt_rows(&p.space)
            ));
        }
        lines
    });
    emit(&Value::Object(obj), pretty);
    Ok(ExitCode::SUCCESS)
}

fn cmd_coprime_blocks(args: &CoprimeArgs) -> Result<ExitCode> {
    let field = Field::new(args.p, args.m)?;
    let mut blocks = Vec::new();
    for part in args.blocks.split(';') {
        let coeffs = parse_vector(&field, part, "block polynomial")?;
        let poly = monocode::poly::Polynomial::new(&field, coeffs);
        let Some(d) = poly.degree().filter(|&d| d >= 1) else {
            return Err(Error::Parse {
                context: "block polynomial".into(),
                token: part.to_string(),
                position: 0,
            });
        };
        if !poly.is_monic() {
            return Err(Error::Parse {
                context: "block polynomial (must be monic)".into(),
                token: part.to_string(),
                position: 0,
            });
        }
        let mut m = monocode::linalg::MatrixFq::zeros(&field, d, d);
        for j in 0..d.saturating_sub(1) {
            m[(j + 1, j)] = field.one();
        }
        for i in 0..d {
            m[(i, d - 1)] = poly.coeff(i).neg();
        }
        blocks.push(m);
    }
    let report = coprime_block_centralizer(&blocks)?;
    let value = json!({
        "field": mj::field_to_json(&field),
        "block_dims": report.block_dims,
        "diagonal_dims": report.diagonal_dims,
        "offdiag_kernels": report
            .offdiag_kernel_dims
            .iter()
            .map(|&(i, j, d)| json!({ "i": i, "j": j, "dim": d }))
            .collect::<Vec<_>>(),
        "centralizer_dim": report.centralizer_dim,
    });
    let pretty = args.pretty.then(|| {
        vec![
            format!("block dims      {:?}", report.block_dims),
            format!("diagonal dims   {:?}", report.diagonal_dims),
            format!(
                "off-diagonal Sylvester kernels all zero: {}",
                report.offdiag_kernel_dims.iter().all(|&(_, _, d)| d == 0)
            ),
            format!("centralizer dim {}", report.centralizer_dim),
        ]
    });
    emit(&value, pretty);
    Ok(ExitCode::SUCCESS)
}
