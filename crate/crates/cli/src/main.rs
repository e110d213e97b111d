//! `qgame`: build payoff tensors and analyze equilibria of two-player
//! quantum games from the command line.
//!
//! Exit status: 0 on success, 1 when an analysis fails (for example the
//! payoff identity check exceeds its tolerance), 2 on usage or input errors.

mod state;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgame_core::equilibrium::{
    best_response_full, best_response_unitary, classical_ne_scan, closed_form_payoff, ges_search,
    ne_family_scan, reduced_payoff, spectrum, verify_ne, EquilibriumKind, EquilibriumReport,
    ReportState, StrategySet, CLUSTER_TOL, NE_TOL,
};
use qgame_core::game::{verify_theorem, OperatorSampling};
use qgame_core::report::{self, format_float};
use qgame_core::{
    BaseStrategy, CMatrix, Error, GameDefinition, Player, StrategyDensity, StrategyOperator,
    UnitaryParams,
};
use serde_json::{json, Value};

const DEFAULT_THEOREM_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(
    name = "qgame",
    version,
    about = "Payoff tensors and equilibria of two-player quantum games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit both 16x16 payoff tensors and their classical 4x4 blocks.
    Build(BuildArgs),
    /// Eigen-decomposition of one player's payoff tensor.
    Spectrum(SpectrumArgs),
    /// Payoffs of a pair of strategies.
    Payoff(PayoffArgs),
    /// Best response of one player to a unitary opponent.
    BestResponse(BestResponseArgs),
    /// Scan product profiles for Nash equilibria.
    NeScan(NeScanArgs),
    /// Search for a global equilibrium state shared by both tensors.
    Ges(GesArgs),
    /// Check that operator and tensor payoffs agree on random strategies.
    VerifyTheorem(VerifyTheoremArgs),
    /// Check a candidate state for profitable unilateral deviations.
    VerifyNe(VerifyNeArgs),
}

#[derive(Args, Debug)]
struct GameArgs {
    /// Game definition file (JSON); excludes --r/--s/--t/--p.
    #[arg(long, conflicts_with_all = ["r", "s", "t", "p"])]
    game: Option<PathBuf>,
    /// Reward for mutual cooperation.
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Sucker's payoff.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Temptation to defect.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Punishment for mutual defection.
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SetArg {
    Full,
    Unitary,
    Classical,
}

impl From<SetArg> for StrategySet {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::Full => StrategySet::Full,
            SetArg::Unitary => StrategySet::Unitary,
            SetArg::Classical => StrategySet::Classical,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SamplingArg {
    Arbitrary,
    Unitary,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    game: GameArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 1)]
    player: u8,
    /// Eigenvalues closer than this form one cluster.
    #[arg(long = "tol.cluster", default_value_t = CLUSTER_TOL)]
    tol_cluster: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct PayoffArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Player 1 strategy: Nc, Fc, Nq, Fq, `theta=..,phi=..` or `alpha=..,beta=..,gamma=..`.
    #[arg(long)]
    u1: String,
    /// Player 2 strategy, same syntax as --u1.
    #[arg(long)]
    u2: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct BestResponseArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 1)]
    player: u8,
    /// Opponent unitary: `theta=..,phi=..` or `alpha=..,beta=..,gamma=..`.
    #[arg(long)]
    opponent: String,
    /// Points per angle for the canonical grid representative.
    #[arg(long, default_value_t = 16)]
    grid: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct NeScanArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Points per angle.
    #[arg(long, default_value_t = 16)]
    grid: usize,
    /// `unitary` scans three-angle unitaries, `classical` scans Nc/Fc mixtures.
    #[arg(long, value_enum, default_value_t = SetArg::Unitary)]
    set: SetArg,
    #[arg(long = "tol.ne", default_value_t = NE_TOL)]
    tol_ne: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct GesArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long = "tol.cluster", default_value_t = CLUSTER_TOL)]
    tol_cluster: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyTheoremArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SamplingArg::Arbitrary)]
    sampling: SamplingArg,
    /// Maximum allowed relative discrepancy.
    #[arg(long = "tol.theorem", default_value_t = DEFAULT_THEOREM_TOL)]
    tol_theorem: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyNeArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Candidate state file (JSON with `vector`, `density`, `factors` or `profile`).
    #[arg(long)]
    state: PathBuf,
    #[arg(long, value_enum, default_value_t = SetArg::Full)]
    set: SetArg,
    #[arg(long = "tol.ne", default_value_t = NE_TOL)]
    tol_ne: f64,
    #[command(flatten)]
    out: OutputArgs,
}

enum Failure {
    Usage(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::ImaginaryPayoff { .. } => {
                Failure::Analysis(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Analysis(msg)) => {
            eprintln!("qgame: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qgame: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Build(a) => cmd_build(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Payoff(a) => cmd_payoff(a),
        Command::BestResponse(a) => cmd_best_response(a),
        Command::NeScan(a) => cmd_ne_scan(a),
        Command::Ges(a) => cmd_ges(a),
        Command::VerifyTheorem(a) => cmd_verify_theorem(a),
        Command::VerifyNe(a) => cmd_verify_ne(a),
    }
}

fn load_game(args: &GameArgs) -> Result<GameDefinition, Failure> {
    if let Some(path) = &args.game {
        let text = read_file(path)?;
        return GameDefinition::from_json(&text)
            .map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    let r = args.r.unwrap_or(3.0);
    let s = args.s.unwrap_or(0.0);
    let t = args.t.unwrap_or(5.0);
    let p = args.p.unwrap_or(1.0);
    Ok(GameDefinition::canonical_pd(r, s, t, p)?)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn check_tol(name: &str, value: f64) -> CmdResult {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--tol.{name} must be positive, got {value}")))
    }
}

fn check_grid(grid: usize) -> CmdResult {
    if grid < 2 {
        return Err(usage(format!("--grid must be at least 2, got {grid}")));
    }
    Ok(())
}

fn player(n: u8) -> Result<Player, Failure> {
    Ok(Player::from_number(n)?)
}

fn emit(
    out: &OutputArgs,
    json: &Value,
    text: impl FnOnce() -> String,
    csv: Option<String>,
) -> CmdResult {
    let body = match out.format {
        Format::Json => report::to_canonical_json(json),
        Format::Text => text(),
        Format::Csv => {
            csv.ok_or_else(|| usage("csv output is only available for unitary ne-scan"))?
        }
    };
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Analysis(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(body.as_bytes())
                .and_then(|()| stdout.flush())
            {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Analysis(format!("cannot write output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

/// Rounds values within 1e-12 of zero so text reports do not show `-0.000`.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn matrix_text(m: &CMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| {
                if z.im == 0.0 {
                    format!("{:>8.4}", z.re)
                } else {
                    format!("{:>8.4}{:+.4}i", z.re, z.im)
                }
            })
            .collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

fn cmd_build(a: BuildArgs) -> CmdResult {
    let game = load_game(&a.game)?;
    let tensors = game.payoff_tensors();
    let json = json!({
        "game": game.to_json(),
        "tensors": tensors.iter().map(report::tensor_json).collect::<Vec<_>>(),
    });
    emit(
        &a.out,
        &json,
        || {
            let mut s = String::new();
            for h in &tensors {
                let _ = writeln!(s, "H{} (16x16):", h.player());
                s.push_str(&matrix_text(h.matrix()));
                let _ = writeln!(s, "H{} classical block (4x4):", h.player());
                s.push_str(&matrix_text(&h.classical_submatrix()));
            }
            s
        },
        None,
    )
}

fn cmd_spectrum(a: SpectrumArgs) -> CmdResult {
    check_tol("cluster", a.tol_cluster)?;
    let game = load_game(&a.game)?;
    let h = game.build_payoff_tensor(player(a.player)?);
    let spectral = spectrum(&h, a.tol_cluster)?;
    emit(
        &a.out,
        &report::spectrum_json(&spectral),
        || {
            let mut s = format!("player {} eigenvalues:\n", spectral.player);
            for c in &spectral.clusters {
                let _ = writeln!(
                    s,
                    "  {:.12} (multiplicity {})",
                    clean(c.eigenvalue),
                    c.dim()
                );
            }
            s
        },
        None,
    )
}

enum StrategyArg {
    Base(BaseStrategy),
    Unitary(UnitaryParams),
}

impl StrategyArg {
    fn parse(flag: &str, text: &str) -> Result<Self, Failure> {
        if let Ok(b) = text.parse::<BaseStrategy>() {
            return Ok(StrategyArg::Base(b));
        }
        text.parse::<UnitaryParams>()
            .map(StrategyArg::Unitary)
            .map_err(|e| usage(format!("--{flag}: {e}")))
    }

    fn operator(&self) -> StrategyOperator {
        match self {
            StrategyArg::Base(b) => b.operator(),
            StrategyArg::Unitary(p) => p.operator(),
        }
    }

    fn json(&self) -> Value {
        match self {
            StrategyArg::Base(b) => json!(b.name()),
            StrategyArg::Unitary(p) => report::params_json(p),
        }
    }
}

fn cmd_payoff(a: PayoffArgs) -> CmdResult {
    let game = load_game(&a.game)?;
    let u1 = StrategyArg::parse("u1", &a.u1)?;
    let u2 = StrategyArg::parse("u2", &a.u2)?;
    let e = game.payoffs(&u1.operator(), &u2.operator())?;
    let closed_form = match (&u1, &u2, game.params()) {
        (StrategyArg::Unitary(p1), StrategyArg::Unitary(p2), Some(pd))
            if game.is_canonical_pd() =>
        {
            Some([
                closed_form_payoff(p1, p2, &pd, Player::One),
                closed_form_payoff(p1, p2, &pd, Player::Two),
            ])
        }
        _ => None,
    };
    let json = json!({
        "u1": u1.json(),
        "u2": u2.json(),
        "payoffs": e,
        "closed_form": closed_form,
    });
    emit(
        &a.out,
        &json,
        || format!("E1 = {}\nE2 = {}\n", format_float(e[0]), format_float(e[1])),
        None,
    )
}

fn cmd_best_response(a: BestResponseArgs) -> CmdResult {
    let game = load_game(&a.game)?;
    let who = player(a.player)?;
    let opponent: UnitaryParams = a
        .opponent
        .parse()
        .map_err(|e| usage(format!("--opponent: {e}")))?;
    let (params, value) = best_response_unitary(&game, &opponent, who, a.grid)?;

    let h = game.build_payoff_tensor(who);
    let hr = reduced_payoff(
        &h,
        &StrategyDensity::pure_strategy(&opponent.vector())?,
        who,
    )?;
    let (vector, full_value) = best_response_full(&hr)?;
    let json = json!({
        "player": who.index() + 1,
        "opponent": report::params_json(&opponent),
        "unitary": { "params": report::params_json(&params), "payoff": value },
        "full": {
            "vector": report::strategy_vector_json(&vector),
            "operator": report::matrix_json(vector.reconstruct().matrix()),
            "payoff": full_value,
            "unitary": vector.reconstruct().is_unitary(1e-9),
        },
    });
    emit(
        &a.out,
        &json,
        || {
            format!(
                "best unitary response: {params} (payoff {})\nbest unit-norm response payoff: {}\n",
                format_float(value),
                format_float(full_value)
            )
        },
        None,
    )
}

fn equilibrium_text(r: &EquilibriumReport) -> String {
    let state = match &r.state {
        Some(ReportState::Profile([a, b])) => format!("({a}) x ({b})"),
        Some(ReportState::ClassicalMixture { p_nc }) => {
            format!("P(Nc) = ({}, {})", p_nc[0], p_nc[1])
        }
        Some(ReportState::Vector(_)) => "pure state".into(),
        Some(ReportState::Density(_)) => "mixed state".into(),
        None => "-".into(),
    };
    format!(
        "{:?}: {state}  E = ({:.12}, {:.12})  margin {}\n",
        r.kind,
        clean(r.payoffs[0]),
        clean(r.payoffs[1]),
        r.deviation_margin
            .map_or("-".into(), |m| format!("{m:.3e}"))
    )
}

fn cmd_ne_scan(a: NeScanArgs) -> CmdResult {
    check_grid(a.grid)?;
    check_tol("ne", a.tol_ne)?;
    let game = load_game(&a.game)?;
    let [h1, h2] = game.payoff_tensors();
    let (reports, csv) = match a.set {
        SetArg::Unitary => {
            let r = ne_family_scan(&h1, &h2, a.grid, a.tol_ne)?;
            let csv = report::scan_csv(&r);
            (r, Some(csv))
        }
        SetArg::Classical => (classical_ne_scan(&h1, &h2, a.grid, a.tol_ne)?, None),
        SetArg::Full => {
            return Err(usage("ne-scan supports --set unitary or --set classical"));
        }
    };
    let json = json!({
        "grid": a.grid,
        "strategy_set": StrategySet::from(a.set),
        "count": reports.len(),
        "equilibria": reports.iter().map(report::equilibrium_json).collect::<Vec<_>>(),
    });
    emit(
        &a.out,
        &json,
        || {
            let mut s = format!("{} equilibria\n", reports.len());
            for r in &reports {
                s.push_str(&equilibrium_text(r));
            }
            s
        },
        csv,
    )
}

fn cmd_ges(a: GesArgs) -> CmdResult {
    check_tol("cluster", a.tol_cluster)?;
    let game = load_game(&a.game)?;
    let [h1, h2] = game.payoff_tensors();
    let ges = ges_search(&h1, &h2, a.tol_cluster)?;
    emit(
        &a.out,
        &report::ges_json(&ges),
        || {
            let mut s = if ges.report.kind == EquilibriumKind::Ges {
                format!("global equilibrium state, E = {:?}\n", ges.report.payoffs)
            } else {
                "no global equilibrium state\n".to_string()
            };
            for c in &ges.common {
                let _ = writeln!(
                    s,
                    "common eigenstate E = ({:.12}, {:.12}) dim {} product {} unitary {:?}",
                    clean(c.eigenvalues[0]),
                    clean(c.eigenvalues[1]),
                    c.dim,
                    c.factors.is_some(),
                    c.unitary_flags
                );
            }
            s
        },
        None,
    )
}

fn cmd_verify_theorem(a: VerifyTheoremArgs) -> CmdResult {
    check_tol("theorem", a.tol_theorem)?;
    if a.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let game = load_game(&a.game)?;
    let sampling = match a.sampling {
        SamplingArg::Arbitrary => OperatorSampling::Arbitrary,
        SamplingArg::Unitary => OperatorSampling::Unitary,
    };
    let rep = verify_theorem(&game, a.samples, sampling, a.seed)?;
    emit(
        &a.out,
        &report::theorem_json(&rep, a.tol_theorem),
        || {
            format!(
                "{} samples: max abs discrepancy {:.3e}, max rel discrepancy {:.3e} ({})\n",
                rep.samples,
                rep.max_abs_discrepancy,
                rep.max_rel_discrepancy,
                if rep.passes(a.tol_theorem) {
                    "pass"
                } else {
                    "FAIL"
                }
            )
        },
        None,
    )?;
    if rep.passes(a.tol_theorem) {
        Ok(())
    } else {
        Err(Failure::Analysis(format!(
            "relative discrepancy {:e} exceeds {:e}",
            rep.max_rel_discrepancy, a.tol_theorem
        )))
    }
}

fn cmd_verify_ne(a: VerifyNeArgs) -> CmdResult {
    check_tol("ne", a.tol_ne)?;
    let game = load_game(&a.game)?;
    let text = read_file(&a.state)?;
    let rho =
        state::parse_state(&text).map_err(|e| usage(format!("{}: {e}", a.state.display())))?;
    let [h1, h2] = game.payoff_tensors();
    let rep = verify_ne(&h1, &h2, &rho, a.set.into(), a.tol_ne)?;
    emit(
        &a.out,
        &report::equilibrium_json(&rep),
        || equilibrium_text(&rep),
        None,
    )
}
