use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qma_amp::circuit::{
    parse_circuit, planted_instance, read_witness, serialize_circuit, serialize_witness,
    PlantedKind, PromiseParameters, VerifierCircuit,
};
use qma_amp::geometry::{brute_force_pmax, decomposition_json, jordan_decompose};
use qma_amp::mw::{mw_amplify, mw_amplify_from, FirstMeasurement};
use qma_amp::trials::{run_trials, trial_seed};
use qma_amp::walk::{fast_amplify, mw_length, plan_precision, PrecisionPlan, DEFAULT_EPS_PE, MW_CONSTANT};
use qma_amp::witness::{prepare_witness, qma1_verify, WitnessSearch};
use qma_amp::{Error, StateVectorF64};
use qma_amp_cli::compare::{compare_row, sweep, sweep_slopes, CompareRow};
use qma_amp_cli::report::{summarize, write_rows, ReportRow};

#[derive(Parser)]
#[command(name = "qma-amp", version, about = "Verifier amplification experiments on a statevector simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the two-projector decomposition of a verifier as JSON.
    Decompose {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the best acceptance probability and its witness.
    Oracle {
        #[arg(long)]
        circuit: PathBuf,
        /// Also write the top witness in witness-file format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median-boosted phase estimation of the walk operator.
    AmplifyFast {
        #[command(flatten)]
        input: Instance,
        #[command(flatten)]
        promise: Promise,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Alternating-measurement baseline.
    AmplifyMw {
        #[command(flatten)]
        input: Instance,
        #[command(flatten)]
        promise: Promise,
        #[command(flatten)]
        run: RunOpts,
        /// Sequence length; defaults to ceil(c·r/(a−b)²).
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value_t = MW_CONSTANT)]
        mw_c: f64,
        /// Projector measured first.
        #[arg(long, value_enum, default_value_t = First::Pi1)]
        first: First,
    },
    /// Planned query counts of both methods over a sweep of gaps at fixed a.
    Compare {
        #[arg(long, default_value_t = 0.9)]
        a: f64,
        /// With --circuit and --witness, both methods also run at (a, b).
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 6)]
        r: usize,
        #[arg(long = "eps-pe", default_value_t = DEFAULT_EPS_PE)]
        eps_pe: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.1, 0.05, 0.02])]
        gaps: Vec<f64>,
        #[arg(long, default_value_t = MW_CONSTANT)]
        mw_c: f64,
        #[arg(long, requires = "witness")]
        circuit: Option<PathBuf>,
        #[arg(long, requires = "circuit")]
        witness: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Grid search for a witness by reverse phase estimation.
    PrepareWitness {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        promise: Promise,
        /// Phase-register size used for extraction.
        #[arg(long, default_value_t = 8)]
        t: usize,
        #[arg(long)]
        grid_bits: Option<usize>,
        #[arg(long, default_value_t = 8)]
        retries: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "QMA_AMP_THREADS")]
        threads: Option<usize>,
        /// Witness file for the first trial's candidate.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV of one candidate row per trial.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exact-phase verification of a claimed dyadic angle.
    Qma1 {
        #[command(flatten)]
        input: Instance,
        #[command(flatten)]
        promise: Promise,
        #[arg(long)]
        claim: f64,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Generate a planted verifier with known best acceptance.
    Planted {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        num_witness: usize,
        #[arg(long, default_value_t = 1)]
        num_ancilla: usize,
        #[arg(long, default_value_t = 0.125)]
        phi: f64,
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        #[arg(long, default_value_t = 0.05)]
        margin: f64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum First {
    Pi1,
    Pi0,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dyadic,
    No,
    Commuting,
    Random,
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    witness: PathBuf,
}

#[derive(Args)]
struct Promise {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 6)]
    r: usize,
    #[arg(long = "eps-pe", default_value_t = DEFAULT_EPS_PE)]
    eps_pe: f64,
}

impl Promise {
    fn params(&self) -> Result<PromiseParameters, Error> {
        PromiseParameters::new(self.a, self.b, self.r)
    }

    fn plan(&self) -> Result<PrecisionPlan, Error> {
        plan_precision(&self.params()?, self.eps_pe)
    }
}

#[derive(Args)]
struct RunOpts {
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "QMA_AMP_THREADS")]
    threads: Option<usize>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the wall_ms column. Timings make reports non-reproducible.
    #[arg(long)]
    timing: bool,
}

impl RunOpts {
    fn check(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("--trials must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("--threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Runs `f` once per trial and returns rows in trial order.
    fn rows<F>(&self, f: F) -> Result<Vec<ReportRow>, Error>
    where
        F: Fn(&mut ChaCha8Rng) -> Result<(&'static str, f64, u64, u64), Error> + Sync,
    {
        self.check()?;
        let timing = self.timing;
        let seed = self.seed;
        run_trials(self.trials, seed, self.threads, |i, rng| {
            let start = Instant::now();
            let (verdict, statistic, queries_v, queries_vdag) = f(rng)?;
            Ok(ReportRow {
                trial: i,
                verdict,
                statistic,
                queries_v,
                queries_vdag,
                wall_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
                seed: trial_seed(seed, i as u64),
            })
        })
    }
}


#[derive(Serialize)]
struct CandidateRow {
    trial: usize,
    verdict: &'static str,
    grid_phi: Option<f64>,
    estimated_acceptance: Option<f64>,
    fidelity_vs_oracle: Option<f64>,
    attempts: Option<usize>,
    queries_v: Option<u64>,
    queries_vdag: Option<u64>,
    seed: u64,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn load_circuit(path: &Path) -> Result<VerifierCircuit<f64>, Error> {
    let text = fs::read(path).map_err(|e| io_err(path, e))?;
    parse_circuit(&text)
}

fn load_witness(path: &Path, circuit: &VerifierCircuit<f64>) -> Result<StateVectorF64, Error> {
    let text = fs::read(path).map_err(|e| io_err(path, e))?;
    let file = read_witness::<f64>(&text)?;
    if let Some(w) = file.warning {
        eprintln!("warning: {}: {w}", path.display());
    }
    if file.state.num_qubits() != circuit.num_witness {
        return Err(Error::RegisterMismatch {
            expected: circuit.num_witness,
            got: file.state.num_qubits(),
        });
    }
    Ok(file.state)
}

fn load_instance(input: &Instance) -> Result<(VerifierCircuit<f64>, StateVectorF64), Error> {
    let circuit = load_circuit(&input.circuit)?;
    let witness = load_witness(&input.witness, &circuit)?;
    Ok((circuit, witness))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.write_all(b"\n")?;
            Ok(())
        }
    }
}

fn write_csv<S: Serialize>(path: Option<&Path>, rows: &[S]) -> Result<(), Error> {
    let result = match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| io_err(p, e))?;
            write_rows(io::BufWriter::new(file), rows)
        }
        None => write_rows(io::stdout().lock(), rows),
    };
    result.map_err(|e| Error::Io(e.to_string()))
}

fn report(label: &str, run: &RunOpts, rows: &[ReportRow]) -> Result<(), Error> {
    write_csv(run.out.as_deref(), rows)?;
    let (rate, queries) = summarize(rows);
    eprintln!(
        "{label}: {} trials, accept rate {rate:.4}, mean V queries {queries:.1}",
        rows.len()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Decompose { circuit, out } => {
            let d = jordan_decompose(&load_circuit(&circuit)?)?;
            let json = serde_json::to_string_pretty(&decomposition_json(&d))
                .map_err(|e| Error::Io(e.to_string()))?;
            write_text(out.as_deref(), &json)
        }
        Command::Oracle { circuit, out } => {
            let o = brute_force_pmax(&load_circuit(&circuit)?)?;
            let witness: serde_json::Value = serde_json::from_str(&serialize_witness(&o.top_witness))
                .map_err(|e| Error::Io(e.to_string()))?;
            let doc = serde_json::json!({
                "pmax": o.pmax,
                "spectrum": o.spectrum,
                "top_witness": witness,
            });
            let json = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
            write_text(None, &json)?;
            if let Some(p) = out {
                write_text(Some(&p), &serialize_witness(&o.top_witness))?;
            }
            Ok(())
        }
        Command::AmplifyFast { input, promise, run } => {
            let (circuit, witness) = load_instance(&input)?;
            let plan = promise.plan()?;
            eprintln!(
                "plan: t = {}, N1 = {}, r = {}, threshold {:.6}",
                plan.t_bits,
                plan.n1,
                plan.r,
                plan.threshold()
            );
            let rows = run.rows(|rng| {
                let d = fast_amplify(&circuit, &witness, &plan, rng)?;
                Ok((d.verdict.as_str(), d.median_folded, d.queries_v, d.queries_vdag))
            })?;
            report("amplify-fast", &run, &rows)
        }
        Command::AmplifyMw { input, promise, run, length, mw_c, first } => {
            let first = match first {
                First::Pi1 => FirstMeasurement::Pi1,
                First::Pi0 => FirstMeasurement::Pi0,
            };
            let (circuit, witness) = load_instance(&input)?;
            let params = promise.params()?;
            let n = match length {
                Some(0) => return Err(Error::InvalidParameter("--length must be positive".into())),
                Some(n) => n,
                None => mw_length(&params, mw_c) as usize,
            };
            eprintln!("sequence length N = {n}");
            let rows = run.rows(|rng| {
                let d = mw_amplify_from(&circuit, &witness, &params, n, first, rng)?;
                Ok((d.verdict.as_str(), d.z as f64, d.queries_v, d.queries_vdag))
            })?;
            report("amplify-mw", &run, &rows)
        }
        Command::Compare { a, b, r, eps_pe, gaps, mw_c, circuit, witness, run } => {
            run.check()?;
            let mut rows: Vec<CompareRow> = Vec::new();
            match (b, circuit, witness) {
                (Some(b), circuit, witness) => {
                    let params = PromiseParameters::new(a, b, r)?;
                    let mut base = compare_row(&params, eps_pe, mw_c)?;
                    if let (Some(c), Some(w)) = (circuit, witness) {
                        let (circuit, witness) = load_instance(&Instance { circuit: c, witness: w })?;
                        let plan = plan_precision(&params, eps_pe)?;
                        let n = base.mw_length as usize;
                        let fast = run.rows(|rng| {
                            let d = fast_amplify(&circuit, &witness, &plan, rng)?;
                            Ok((d.verdict.as_str(), d.median_folded, d.queries_v, d.queries_vdag))
                        })?;
                        let mw = run.rows(|rng| {
                            let d = mw_amplify(&circuit, &witness, &params, n, rng)?;
                            Ok((d.verdict.as_str(), d.z as f64, d.queries_v, d.queries_vdag))
                        })?;
                        let (fast_rate, fast_q) = summarize(&fast);
                        let (mw_rate, mw_q) = summarize(&mw);
                        base.fast_accept_rate = Some(fast_rate);
                        base.mw_accept_rate = Some(mw_rate);
                        eprintln!(
                            "instance at (a, b) = ({a}, {b}): fast accept {fast_rate:.4} with mean V {fast_q:.1}, \
                             baseline accept {mw_rate:.4} with mean V {mw_q:.1}"
                        );
                    }
                    rows.push(base);
                }
                (None, None, None) => {}
                _ => return Err(Error::InvalidParameter("--b is required with an instance".into())),
            }
            let swept = sweep(a, r, &gaps, eps_pe, mw_c)?;
            log_slopes(&swept);
            rows.extend(swept);
            write_csv(run.out.as_deref(), &rows)
        }
        Command::PrepareWitness {
            circuit,
            promise,
            t,
            grid_bits,
            retries,
            trials,
            seed,
            threads,
            out,
            report,
        } => {
            if trials == 0 {
                return Err(Error::InvalidParameter("--trials must be at least 1".into()));
            }
            let circuit = load_circuit(&circuit)?;
            let plan = promise.plan()?;
            let mut search = WitnessSearch::new(t);
            search.grid_bits = grid_bits.unwrap_or(t);
            search.max_retries = retries;
            let top = match brute_force_pmax(&circuit) {
                Ok(o) => Some(o.top_witness),
                Err(e) if e.is_guard() => None,
                Err(e) => return Err(e),
            };
            let results = run_trials(trials, seed, threads, |_, rng| {
                match prepare_witness(&circuit, &search, &plan, rng) {
                    Ok(mut c) => {
                        c.fidelity_vs_oracle = top.as_ref().map(|w| w.fidelity(&c.witness));
                        Ok(Some(c))
                    }
                    Err(Error::RetriesExhausted) => Ok(None),
                    Err(e) => Err(e),
                }
            })?;
            let rows: Vec<CandidateRow> = results
                .iter()
                .enumerate()
                .map(|(i, c)| CandidateRow {
                    trial: i,
                    verdict: if c.is_some() { "accept" } else { "exhausted" },
                    grid_phi: c.as_ref().map(|c| c.grid_phi),
                    estimated_acceptance: c.as_ref().map(|c| c.estimated_acceptance),
                    fidelity_vs_oracle: c.as_ref().and_then(|c| c.fidelity_vs_oracle),
                    attempts: c.as_ref().map(|c| c.attempts),
                    queries_v: c.as_ref().map(|c| c.queries.v),
                    queries_vdag: c.as_ref().map(|c| c.queries.v_dag),
                    seed: trial_seed(seed, i as u64),
                })
                .collect();
            if let Some(p) = report {
                write_csv(Some(&p), &rows)?;
            }
            let found = rows.iter().filter(|r| r.grid_phi.is_some()).count();
            eprintln!("prepare-witness: {found}/{trials} trials produced a verified witness");
            match &results[0] {
                Some(c) => {
                    eprintln!(
                        "trial 0: grid phase {}, estimated acceptance {:.6}",
                        c.grid_phi, c.estimated_acceptance
                    );
                    write_text(out.as_deref(), &serialize_witness(&c.witness))
                }
                None => Err(Error::RetriesExhausted),
            }
        }
        Command::Qma1 { input, promise, claim, t, run } => {
            let (circuit, witness) = load_instance(&input)?;
            let params = promise.params()?;
            run.check()?;
            let outcomes = run_trials(run.trials, run.seed, run.threads, |_, rng| {
                qma1_verify(&circuit, &witness, claim, t, &params, rng)
            })?;
            let rows: Vec<ReportRow> = outcomes
                .iter()
                .enumerate()
                .map(|(i, o)| ReportRow {
                    trial: i,
                    verdict: o.verdict.as_str(),
                    statistic: o.samples.first().map_or(f64::NAN, |s| s.raw_phi),
                    queries_v: o.queries_v,
                    queries_vdag: o.queries_vdag,
                    wall_ms: None,
                    seed: trial_seed(run.seed, i as u64),
                })
                .collect();
            if run.out.is_some() {
                write_csv(run.out.as_deref(), &rows)?;
            }
            let mut stdout = io::stdout().lock();
            for o in &outcomes {
                writeln!(stdout, "{}", o.verdict.as_str())?;
            }
            let (rate, _) = summarize(&rows);
            eprintln!("qma1: {} trials, accept rate {rate:.4}", rows.len());
            Ok(())
        }
        Command::Planted {
            kind,
            num_witness,
            num_ancilla,
            phi,
            b,
            margin,
            depth,
            seed,
            out,
            witness_out,
        } => {
            let kind = match kind {
                Kind::Dyadic => PlantedKind::DyadicPhase { phi },
                Kind::No => PlantedKind::NoInstance { b, margin },
                Kind::Commuting => PlantedKind::Commuting,
                Kind::Random => PlantedKind::UniformRandom { depth },
            };
            let inst = planted_instance::<f64>(kind, num_witness, num_ancilla, seed)?;
            eprintln!(
                "planted instance: pmax {:.10}, yes instance {}",
                inst.known_pmax, inst.is_yes_instance
            );
            write_text(out.as_deref(), &serialize_circuit(&inst.circuit))?;
            if let Some(p) = witness_out {
                write_text(Some(&p), &serialize_witness(&inst.known_top_witness))?;
            }
            Ok(())
        }
    }
}

fn log_slopes(rows: &[CompareRow]) {
    if rows.len() >= 2 {
        let (fast, mw) = sweep_slopes(rows);
        eprintln!(
            "log-log slope of queries vs 1/(a-b): fast {fast:.3}, baseline {mw:.3}"
        );
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_guard() { 2 } else { 1 })
        }
    }
}
