use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use vcover::braid::{
    closure_summary, fiber_euler, fiber_stabilize, is_homogeneous, stallings_homogenize, total_intersection, BraidWord,
    MixedBraid,
};
use vcover::gauss::{alexander_numbering, index_report, parse_gauss, writhe_index_polynomial};
use vcover::milnor::{
    index_chain_check, m123_from_words, mellor_melvin, mu123_from_longitudes, mu123_of_closure, LongitudeSet, MmData,
    Residue,
};
use vcover::seifert::{
    ac_bridge_check, alexander_ac, alexander_classical, mvap, parse_block, parse_matrix, vpm_from_block, AcSeifertPair,
};
use vcover::selftest::{self, DEFAULT_SEED};

/// Exact invariants of virtual knots and classical links.
///
/// Seifert matrices passed through --block, --matrix, --vminus and --vplus
/// must all use the same push-off convention: entry (i, j) is the linking
/// number of curve i with the positive push-off of curve j.
#[derive(Parser)]
#[command(name = "vcover", version)]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Crossing indices and almost-classical tests on Gauss codes like `O1+,O2+,U1+,U2+`.
    #[command(subcommand)]
    Gauss(GaussCommand),
    /// Alexander polynomials from Seifert matrices.
    #[command(subcommand)]
    Alex(AlexCommand),
    /// Two-variable Alexander polynomial of block Seifert data.
    Mvap {
        #[arg(long)]
        block: PathBuf,
    },
    /// Verify the bridging identities on user data.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Milnor's triple linking number.
    #[command(subcommand)]
    Milnor(MilnorCommand),
    /// Braid closures, homogenization and fiber stabilization.
    #[command(subcommand)]
    Braid(BraidCommand),
    /// Run every randomized identity suite and print a pass/fail table.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GaussCommand {
    /// Index of every crossing, and the writhe.
    Index { code: String },
    /// Whether the diagram is almost classical, with an Alexander numbering if so.
    Ac { code: String },
    /// Writhe polynomial: the sum over crossings of sign·(t^index − 1).
    Writhe { code: String },
}

#[derive(Subcommand)]
enum AlexCommand {
    /// det(tV − Vᵀ) for a classical Seifert matrix.
    Classical {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// det(tV⁻ − V⁺) from a pair of matrices or from block data.
    Ac(AcArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["block", "vminus"])))]
struct AcArgs {
    #[arg(long, conflicts_with_all = ["vminus", "vplus"])]
    block: Option<PathBuf>,
    #[arg(long, requires = "vplus")]
    vminus: Option<PathBuf>,
    #[arg(long, requires = "vminus")]
    vplus: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// det(tV⁻ − V⁺) = det(A_J)·t^{2g_K}·∇(0, t⁻¹), exactly.
    Thm31 {
        #[arg(long)]
        block: PathBuf,
    },
    /// Crossing index k2ᵀFk3 against the derivative-curve chain on a sum of g trefoil fibers.
    Thm41 {
        /// Comma-separated homology class, e.g. `0,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k2: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        k3: Vec<i64>,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lk23: i64,
    },
}

#[derive(Subcommand)]
enum MilnorCommand {
    /// Triple linking number of a pure braid closure, e.g. "1 -2 1 -2 1 -2".
    Braid {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 3)]
        strands: usize,
    },
    /// Triple linking number from a file of longitude words, one per line.
    Longitudes { file: PathBuf },
    /// Counting formula from surface words, triple points and linking numbers (JSON).
    Mm { file: PathBuf },
}

#[derive(Subcommand)]
enum BraidCommand {
    /// Add strands until the braid is homogeneous.
    Homogenize {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: usize,
    },
    /// Fiber-stabilize a parted mixed braid given as JSON.
    Stabilize { file: PathBuf },
    /// Components, linking numbers and fiber surface data of a closure.
    Summary {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] vcover::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Io { .. } => "IoError",
            CliError::CheckFailed(_) => "CheckFailed",
        }
    }
}

fn domain<E: Into<vcover::Error>>(e: E) -> CliError {
    CliError::Domain(e.into())
}

/// Text and JSON renderings of one result. `failed` carries a message when a
/// verification ran but did not pass.
struct Report {
    text: String,
    json: Value,
    failed: Option<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            failed: None,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn signed(s: impl Into<i64>) -> String {
    format!("{:+}", s.into())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn residue_json(r: &Residue) -> Value {
    json!({ "value": r.value, "modulus": r.modulus })
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Gauss(cmd) => gauss(cmd),
        Command::Alex(cmd) => alex(cmd),
        Command::Mvap { block } => {
            let nabla = mvap(&parse_block(&read(&block)?).map_err(domain)?).map_err(domain)?;
            Ok(Report::ok(nabla.to_string(), json!({ "mvap": nabla.to_string() })))
        }
        Command::Check(cmd) => check(cmd),
        Command::Milnor(cmd) => milnor(cmd),
        Command::Braid(cmd) => braid(cmd),
        Command::Selftest { seed } => {
            let outcomes = selftest::run_all(seed);
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            let mut text: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
            text.push(format!(
                "seed {seed}: {} of {} suites passed",
                outcomes.len() - failed,
                outcomes.len()
            ));
            Ok(Report {
                text: text.join("\n"),
                json: json!({ "seed": seed, "suites": outcomes, "pass": failed == 0 }),
                failed: (failed > 0).then(|| format!("{failed} suite(s) failed")),
            })
        }
    }
}

fn gauss(cmd: GaussCommand) -> Result<Report, CliError> {
    match cmd {
        GaussCommand::Index { code } => {
            let report = index_report(&parse_gauss(&code).map_err(domain)?);
            let chords: Vec<Value> = report
                .entries
                .iter()
                .map(|e| json!({ "chord": e.chord, "sign": e.sign, "index": e.index }))
                .collect();
            Ok(Report::ok(
                report.to_string().trim_end().to_string(),
                json!({ "chords": chords, "writhe": report.writhe }),
            ))
        }
        GaussCommand::Ac { code } => {
            let numbering = alexander_numbering(&parse_gauss(&code).map_err(domain)?);
            let text = match &numbering {
                Some(n) => {
                    let labels: Vec<String> = n.labels.iter().map(ToString::to_string).collect();
                    format!("almost classical: yes\nnumbering: {}", labels.join(" "))
                }
                None => "almost classical: no".to_string(),
            };
            let json = json!({
                "almost_classical": numbering.is_some(),
                "numbering": numbering.as_ref().map(|n| n.labels.clone()),
            });
            Ok(Report::ok(text, json))
        }
        GaussCommand::Writhe { code } => {
            let p = writhe_index_polynomial(&parse_gauss(&code).map_err(domain)?);
            Ok(Report::ok(p.to_string(), json!({ "writhe_polynomial": p.to_string() })))
        }
    }
}

fn alex(cmd: AlexCommand) -> Result<Report, CliError> {
    let p = match cmd {
        AlexCommand::Classical { matrix } => {
            alexander_classical(&parse_matrix(&read(&matrix)?).map_err(domain)?).map_err(domain)?
        }
        AlexCommand::Ac(AcArgs { block: Some(block), .. }) => {
            let pair = vpm_from_block(&parse_block(&read(&block)?).map_err(domain)?).map_err(domain)?;
            alexander_ac(&pair).map_err(domain)?
        }
        AlexCommand::Ac(AcArgs {
            vminus: Some(vminus),
            vplus: Some(vplus),
            ..
        }) => {
            let v_minus = parse_matrix(&read(&vminus)?).map_err(domain)?;
            let v_plus = parse_matrix(&read(&vplus)?).map_err(domain)?;
            alexander_ac(&AcSeifertPair::new(v_minus, v_plus).map_err(domain)?).map_err(domain)?
        }
        AlexCommand::Ac(_) => unreachable!("clap enforces --block or --vminus with --vplus"),
    };
    Ok(Report::ok(p.to_string(), json!({ "alexander": p.to_string() })))
}

fn check(cmd: CheckCommand) -> Result<Report, CliError> {
    match cmd {
        CheckCommand::Thm31 { block } => {
            let r = ac_bridge_check(&parse_block(&read(&block)?).map_err(domain)?).map_err(domain)?;
            let text = format!(
                "lhs = {}\nrhs = {}\nsign = {}\n{}",
                r.lhs,
                r.rhs,
                signed(r.sign),
                verdict(r.pass)
            );
            let json = json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "sign": r.sign, "pass": r.pass });
            Ok(Report {
                text,
                json,
                failed: (!r.pass).then(|| "lhs and rhs differ".to_string()),
            })
        }
        CheckCommand::Thm41 { k2, k3, g, lk23 } => {
            let r = index_chain_check(&k2, &k3, g, lk23).map_err(domain)?;
            let text = format!(
                "index = {}\nt123 = {}\nmu123 = {}\n{}",
                r.index,
                r.t123,
                r.mu123,
                verdict(r.pass)
            );
            let json = json!({ "index": r.index, "t123": r.t123, "mu123": residue_json(&r.mu123), "pass": r.pass });
            Ok(Report {
                text,
                json,
                failed: (!r.pass).then(|| "index and triple-point count differ".to_string()),
            })
        }
    }
}

fn milnor(cmd: MilnorCommand) -> Result<Report, CliError> {
    match cmd {
        MilnorCommand::Braid { word, strands } => {
            let beta = BraidWord::parse(&word, strands).map_err(domain)?;
            let mu = mu123_of_closure(&beta).map_err(domain)?;
            let s = closure_summary(&beta);
            let lk = [s.lk(0, 1), s.lk(0, 2), s.lk(1, 2)];
            let text = format!("mu123 = {mu}\nlk12 = {}\nlk13 = {}\nlk23 = {}", lk[0], lk[1], lk[2]);
            Ok(Report::ok(text, json!({ "mu123": residue_json(&mu), "lk": lk })))
        }
        MilnorCommand::Longitudes { file } => {
            let l = LongitudeSet::parse(&read(&file)?).map_err(domain)?;
            let mu = mu123_from_longitudes(&l, l.linking_gcd()).map_err(domain)?;
            Ok(Report::ok(
                format!("mu123 = {mu}"),
                json!({ "mu123": residue_json(&mu) }),
            ))
        }
        MilnorCommand::Mm { file } => {
            let data = MmData::from_json(&read(&file)?).map_err(domain)?;
            let m123 = m123_from_words(&data.words).map_err(domain)?;
            let mu = mellor_melvin(&data).map_err(domain)?;
            let text = format!("m123 = {m123}\nt123 = {}\nmu123 = {mu}", data.t123);
            Ok(Report::ok(
                text,
                json!({ "m123": m123, "t123": data.t123, "mu123": residue_json(&mu) }),
            ))
        }
    }
}

fn braid(cmd: BraidCommand) -> Result<Report, CliError> {
    match cmd {
        BraidCommand::Homogenize { word, strands } => {
            let h = stallings_homogenize(&BraidWord::parse(&word, strands).map_err(domain)?);
            let text = format!(
                "result = {}\nstrands = {}\nadded = {}\nepsilon = {}",
                h.result,
                h.result.strands(),
                h.added,
                signed(h.epsilon)
            );
            let json = json!({
                "result": h.result.to_string(),
                "strands": h.result.strands(),
                "added": h.added,
                "epsilon": h.epsilon,
            });
            Ok(Report::ok(text, json))
        }
        BraidCommand::Stabilize { file } => {
            let mb = MixedBraid::from_json(&read(&file)?).map_err(domain)?;
            let before = total_intersection(&mb).map_err(domain)?;
            let out = fiber_stabilize(&mb).map_err(domain)?;
            let after = total_intersection(&out).map_err(domain)?;
            let text = format!("{}\ntotal intersection = {before} -> {after}", out.to_json());
            let output: Value = serde_json::from_str(&out.to_json()).expect("mixed braid JSON round-trips");
            let json = json!({ "output": output, "total_intersection_before": before, "total_intersection": after });
            Ok(Report::ok(text, json))
        }
        BraidCommand::Summary { word, strands } => {
            let beta = BraidWord::parse(&word, strands).map_err(domain)?;
            let s = closure_summary(&beta);
            let permutation: Vec<usize> = s.permutation.iter().map(|p| p + 1).collect();
            let perm_text: Vec<String> = permutation.iter().map(ToString::to_string).collect();
            let mut lines = vec![
                format!("components = {}", s.components),
                format!("permutation = {}", perm_text.join(" ")),
            ];
            let mut pairs = Vec::new();
            for a in 0..s.components {
                for b in a + 1..s.components {
                    lines.push(format!("lk({},{}) = {}", a + 1, b + 1, s.lk(a, b)));
                    pairs.push(json!({ "components": [a + 1, b + 1], "lk": s.lk(a, b) }));
                }
            }
            let homogeneous = is_homogeneous(&beta);
            lines.push(format!("homogeneous = {}", if homogeneous { "yes" } else { "no" }));
            let fiber = fiber_euler(&beta).ok();
            if let Some(f) = &fiber {
                lines.push(format!("chi = {}\ngenus = {}", f.chi, f.genus));
            }
            let json = json!({
                "components": s.components,
                "permutation": permutation,
                "linking": pairs,
                "homogeneous": homogeneous,
                "chi": fiber.map(|f| f.chi),
                "genus": fiber.map(|f| f.genus),
            });
            Ok(Report::ok(lines.join("\n"), json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                println!("{}", report.text);
            }
            match report.failed {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    let e = CliError::CheckFailed(msg);
                    eprintln!("error: {}: {e}", e.name());
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
