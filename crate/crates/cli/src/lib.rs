//! Command-line front end for the `chifactor` library.
//!
//! Exit codes: 0 for a true verdict, 1 for a checked false verdict, 2 for
//! an input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chifactor::graph::{
    bond_lattice, chromatic_polynomial, sample_sweep, sweep, verify_chromatic_iff_peo, verify_if_factorization,
    Graph, GraphJson, SweepSummary, VertexOrder,
};
use chifactor::multichain::{stanley_factorization, theorem_equivalence_report, MultichainJson, StanleyResult};
use chifactor::quotient::{verify_chi_preservation, ElementPartitionJson};
use chifactor::transversal::{factor_characteristic_with_budget, AtomPartitionJson, ConditionCheck, DEFAULT_PRODUCT_BUDGET};
use chifactor::{families, Int, IntPolynomial, Lattice, Poset};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "chifactor", version, about = "Characteristic polynomial factorization for ranked posets")]
pub struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial of a poset.
    Chi(PosetArg),
    /// Möbius value of every element.
    Mobius(PosetArg),
    /// Factor χ over an ordered atom partition.
    Factor {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        partition: PathBuf,
        /// Largest transversal product built for the isomorphism check.
        #[arg(long, default_value_t = DEFAULT_PRODUCT_BUDGET)]
        budget: usize,
    },
    /// Homogeneity, summation and rank checks for an element partition.
    QuotientCheck {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        partition: PathBuf,
    },
    /// The four equivalent conditions for a multichain.
    MultichainReport {
        #[command(flatten)]
        poset: PosetArg,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Find a saturated left-modular chain and factor χ along it.
    Stanley(PosetArg),
    /// Emit a fixture lattice as poset JSON.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Graph colouring and increasing forest checks.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
}

#[derive(Debug, Args)]
pub struct PosetArg {
    #[arg(long)]
    pub poset: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Partition lattice Π_n.
    PiN { n: usize },
    /// Boolean lattice B_n.
    Boolean { n: usize },
    /// The six-element non-semimodular lattice 0̂ < a < c < 1̂, 0̂ < b < d < 1̂.
    Fig5,
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Bond lattice as poset JSON.
    Bond(GraphArg),
    /// Chromatic polynomial by deletion–contraction.
    Chromatic(GraphArg),
    /// Increasing spanning forest polynomial for an ordering.
    IfPoly(GraphOrderArg),
    /// Whether the ordering is a perfect elimination ordering and P = IF.
    VerifyPeo(GraphOrderArg),
    /// Check every ordering of graphs on `n` vertices.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Enumerate all graphs and orderings instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Largest `n` accepted with `--exhaustive`.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Sampled (graph, ordering) pairs when not exhaustive.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct GraphArg {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct GraphOrderArg {
    #[arg(long)]
    pub graph: PathBuf,
    /// Vertices from first to last, e.g. `1,3,2`.
    #[arg(long)]
    pub order: VertexOrder,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] chifactor::Error),
    #[error("{0}")]
    Usage(String),
}

/// What a command produced: a verdict (absent for pure computations) and
/// the text to print.
#[derive(Debug)]
pub struct Outcome {
    pub verdict: Option<bool>,
    pub output: String,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiOutput {
    pub chi: IntPolynomial,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusEntry {
    pub element: String,
    pub rank: usize,
    #[serde(with = "chifactor::poly::coeff_serde")]
    pub mobius: Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StanleyOutput {
    pub semimodular: bool,
    pub result: Option<StanleyResult>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn read_poset(path: &Path) -> Result<Poset, CliError> {
    let json: chifactor::PosetJson = read_json(path)?;
    Ok(Poset::try_from(json)?)
}

fn read_lattice(path: &Path) -> Result<Lattice, CliError> {
    Ok(Lattice::new(read_poset(path)?)?)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let json: GraphJson = read_json(path)?;
    Ok(Graph::try_from(json)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn describe(check: &ConditionCheck) -> String {
    let mut s = format!("{}: {}", check.name, if check.holds { "holds" } else { "fails" });
    if let Some(w) = &check.witness {
        let _ = write!(s, " (witness {}", w.element);
        if let Some(t) = &w.transversal {
            let _ = write!(s, ", transversal ({})", t.join(", "));
        }
        if let Some(c) = &w.block_counts {
            let _ = write!(s, ", atoms per block {c:?}");
        }
        s.push(')');
    }
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn sweep_text(s: &SweepSummary) -> String {
    format!(
        "{} vertices: {} graphs, {} (graph, ordering) pairs, {} perfect elimination\n\
         increasing forest failures: {}\nP = IF iff PEO failures: {}\nbond lattice failures: {}\n{}\n",
        s.vertices,
        s.graphs,
        s.pairs,
        s.peo_pairs,
        s.if_failures,
        s.biconditional_failures,
        s.bond_failures,
        if s.passed() { "all checks passed" } else { "CHECKS FAILED" }
    )
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.json;
    let pick = |human: String, machine: String| if json { machine } else { human };
    let outcome = match &cli.command {
        Command::Chi(p) => {
            let poset = read_poset(&p.poset)?;
            let chi = poset.characteristic_polynomial();
            let text = chi.to_string();
            Outcome {
                verdict: None,
                output: pick(format!("{text}\n"), to_json(&ChiOutput { chi, text })),
            }
        }
        Command::Mobius(p) => {
            let poset = read_poset(&p.poset)?;
            let mu = poset.mobius_vector();
            let entries: Vec<MobiusEntry> = poset
                .elements_by_rank()
                .iter()
                .map(|&x| MobiusEntry {
                    element: poset.label(x).to_string(),
                    rank: poset.rank(x),
                    mobius: mu.get(x).clone(),
                })
                .collect();
            let human = entries.iter().map(|e| format!("{}\t{}\n", e.element, e.mobius)).collect();
            Outcome {
                verdict: None,
                output: pick(human, to_json(&entries)),
            }
        }
        Command::Factor { poset, partition, budget } => {
            let lattice = read_lattice(&poset.poset)?;
            let part = read_json::<AtomPartitionJson>(partition)?.resolve(lattice.poset())?;
            let report = factor_characteristic_with_budget(&lattice, &part, *budget)?;
            let mut human = format!("chi: {}\n", report.chi);
            for c in &report.atomic_hypotheses.conditions {
                let _ = writeln!(human, "{}", describe(c));
            }
            match &report.factored {
                Some(f) => {
                    let _ = writeln!(human, "factors: {f}\nroots: {:?}", f.sorted_roots());
                }
                None => human.push_str("no factorization: hypotheses fail\n"),
            }
            let iso = match report.iso_check {
                Some(true) => "passed",
                Some(false) => "failed",
                None => "skipped",
            };
            let _ = writeln!(human, "isomorphism check: {iso}\nmobius via transversals: {}", if report.mobius_ok() { "ok" } else { "mismatch" });
            Outcome {
                verdict: Some(report.factored.is_some()),
                output: pick(human, to_json(&report)),
            }
        }
        Command::QuotientCheck { poset, partition } => {
            let poset = read_poset(&poset.poset)?;
            let part = read_json::<ElementPartitionJson>(partition)?.into_partition(poset.len())?;
            let report = verify_chi_preservation(&poset, &part)?;
            let mut human = format!("homogeneous: {}\n", yes_no(report.homogeneous));
            if let Some(reason) = &report.homogeneity_failure {
                let _ = writeln!(human, "  {reason}");
            }
            let _ = writeln!(
                human,
                "summation condition: {}\nrank compatible: {}\nchi: {}",
                yes_no(report.summation_ok.values().all(|&b| b)),
                yes_no(report.rank_compatible),
                report.chi_original
            );
            if let Some(q) = &report.chi_quotient {
                let _ = writeln!(human, "chi of quotient: {q}");
            }
            let _ = writeln!(human, "chi preserved: {}", yes_no(report.chi_preserved));
            Outcome {
                verdict: Some(report.chi_preserved),
                output: pick(human, to_json(&report)),
            }
        }
        Command::MultichainReport { poset, chain } => {
            let lattice = read_lattice(&poset.poset)?;
            let chain = read_json::<MultichainJson>(chain)?.resolve(&lattice)?;
            let report = theorem_equivalence_report(&lattice, &chain);
            let mut human = format!("chi: {}\ncandidate: {}\n", report.chi, report.candidate);
            for c in [
                &report.support_hypothesis,
                &report.cond1_unique_block,
                &report.cond2_atom_pairs,
                &report.cond3_meet,
                &report.cond4_factors,
            ] {
                let _ = writeln!(human, "{}", describe(c));
            }
            let _ = writeln!(human, "conditions agree: {}", yes_no(report.flags_agree));
            Outcome {
                verdict: Some(report.flags().iter().all(|&b| b)),
                output: pick(human, to_json(&report)),
            }
        }
        Command::Stanley(p) => {
            let lattice = read_lattice(&p.poset)?;
            let out = if lattice.is_semimodular() {
                StanleyOutput {
                    semimodular: true,
                    result: stanley_factorization(&lattice)?,
                }
            } else {
                StanleyOutput {
                    semimodular: false,
                    result: None,
                }
            };
            let human = match (&out.result, out.semimodular) {
                (Some(r), _) => format!("left-modular chain: {}\nfactors: {}\n", r.chain.join(" < "), r.factored),
                (None, true) => "no saturated left-modular chain\n".to_string(),
                (None, false) => "not semimodular\n".to_string(),
            };
            Outcome {
                verdict: Some(out.result.is_some()),
                output: pick(human, to_json(&out)),
            }
        }
        Command::Family { family } => {
            let poset = match family {
                Family::PiN { n } => families::partition_lattice(*n),
                Family::Boolean { n } => families::boolean_lattice(*n),
                Family::Fig5 => families::fig5_lattice(),
            };
            Outcome {
                verdict: None,
                output: to_json(&poset),
            }
        }
        Command::Graph { command } => run_graph(command, json)?,
    };
    Ok(outcome)
}

fn run_graph(command: &GraphCommand, json: bool) -> Result<Outcome, CliError> {
    let pick = |human: String, machine: String| if json { machine } else { human };
    Ok(match command {
        GraphCommand::Bond(g) => {
            let graph = read_graph(&g.graph)?;
            Outcome {
                verdict: None,
                output: to_json(&bond_lattice(&graph)),
            }
        }
        GraphCommand::Chromatic(g) => {
            let graph = read_graph(&g.graph)?;
            let chi = chromatic_polynomial(&graph);
            let text = chi.to_string();
            Outcome {
                verdict: None,
                output: pick(format!("{text}\n"), to_json(&ChiOutput { chi, text })),
            }
        }
        GraphCommand::IfPoly(a) => {
            let graph = read_graph(&a.graph)?;
            let report = verify_if_factorization(&graph, &a.order)?;
            let human = format!(
                "IF: {}\nforest counts: {:?}\nelementary symmetric: {:?}\nproduct: {}\nfactorization holds: {}\n",
                report.if_polynomial,
                report.forest_counts,
                report.elementary,
                report.product,
                yes_no(report.counts_match && report.factorization_holds)
            );
            Outcome {
                verdict: Some(report.counts_match && report.factorization_holds),
                output: pick(human, to_json(&report)),
            }
        }
        GraphCommand::VerifyPeo(a) => {
            let graph = read_graph(&a.graph)?;
            let report = verify_chromatic_iff_peo(&graph, &a.order)?;
            let verdict = format!(
                "{}; {}",
                if report.perfect_elimination { "PEO" } else { "not PEO" },
                if report.equal { "P = IF" } else { "P ≠ IF" }
            );
            let human = format!(
                "P: {}\nIF: {}\n{verdict}\nbond lattice agrees: {}\n",
                report.chromatic,
                report.if_polynomial,
                yes_no(report.bond_lattice_matches)
            );
            Outcome {
                verdict: Some(report.perfect_elimination && report.equal),
                output: pick(human, to_json(&report)),
            }
        }
        GraphCommand::Sweep {
            n,
            exhaustive,
            max_n,
            samples,
            seed,
        } => {
            let summary = if *exhaustive {
                if n > max_n {
                    return Err(CliError::Usage(format!("--exhaustive with n = {n} exceeds --max-n {max_n}")));
                }
                sweep(*n)?
            } else {
                sample_sweep(*n, *samples, *seed)?
            };
            Outcome {
                verdict: Some(summary.passed()),
                output: pick(sweep_text(&summary), to_json(&summary)),
            }
        }
    })
}
