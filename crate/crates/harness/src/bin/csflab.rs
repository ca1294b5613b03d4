use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use csflab::cache::Cache;
use csflab::{emit_report, run_verification, Conjecture, RunConfig, Summary};
use csflab_core::csf::{csf_coloring_oracle, kchain_formula, path_formula, to_elementary, to_schur, SymFunc};
use csflab_core::hikita::{enumerate_hikita, Hikita};
use csflab_core::poset::{poset_from_hessenberg, ReverseHessenberg};
use csflab_core::qcore::{Composition, Partition};
use csflab_core::structural::k_set;
use csflab_core::tableaux::{enumerate_class, inv_generating_function, inv_p, Tableau, TableauClass};
use csflab_core::Rational;

#[derive(Parser)]
#[command(name = "csflab", version, about = "Chromatic quasisymmetric functions and P-tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the chromatic quasisymmetric function of a natural unit interval order.
    Csf {
        #[arg(long)]
        hessenberg: ReverseHessenberg,
        #[arg(long, value_enum, default_value = "e")]
        basis: BasisArg,
        /// Specialize q to a rational number such as 1 or 1/2.
        #[arg(long)]
        q_at: Option<Rational>,
        /// Also write the expansion as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the tableaux of a class with their inversion counts.
    Tableaux {
        #[arg(long)]
        hessenberg: ReverseHessenberg,
        #[arg(long)]
        shape: Partition,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Hikita tableaux of a shape with their probabilities, ζ or h.
    #[command(group(ArgGroup::new("quantity").args(["prob", "zeta", "h"])))]
    Hikita {
        #[arg(long)]
        hessenberg: ReverseHessenberg,
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        prob: bool,
        #[arg(long)]
        zeta: bool,
        #[arg(long)]
        h: bool,
    },
    /// Sweep a conjecture over every natural unit interval order up to a size.
    Verify {
        #[arg(long)]
        conjecture: Conjecture,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// JSON-lines output; standard output when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Result cache directory; CSFLAB_CACHE takes precedence.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Raise the size cap from 8 to 10.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 0)]
        audit_seed: u64,
    },
    /// Closed-form e-expansions for paths and K-chains.
    #[command(group(ArgGroup::new("family").required(true).args(["path", "kchain"])))]
    Formula {
        #[arg(long)]
        path: Option<usize>,
        #[arg(long)]
        kchain: Option<Composition>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    M,
    E,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Standard,
    Strong,
    Powerful,
    Hikita,
    KSet,
}

fn print_expansion(f: &SymFunc) {
    if let Some(w) = f.to_json().get("warning") {
        eprintln!("warning: {}", w.as_str().unwrap_or_default());
    }
    for (lambda, c) in f.terms() {
        println!("{lambda}\t{}", c.pretty());
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Csf { hessenberg, basis, q_at, json } => {
            let p = poset_from_hessenberg(&hessenberg);
            let mut f = csf_coloring_oracle(&p)?;
            if let Some(x) = &q_at {
                f = f.at_q(x);
            }
            let f = match basis {
                BasisArg::M => f,
                BasisArg::E => to_elementary(&f)?,
                BasisArg::S => to_schur(&f)?,
            };
            print_expansion(&f);
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&f.to_json())?;
                std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Tableaux { hessenberg, shape, class } => {
            if shape.size() != hessenberg.n() {
                bail!("{shape} is not a partition of {}", hessenberg.n());
            }
            let p = poset_from_hessenberg(&hessenberg);
            let ts: Vec<Tableau> = match class {
                ClassArg::Standard => enumerate_class(&p, &shape, TableauClass::Standard),
                ClassArg::Strong => enumerate_class(&p, &shape, TableauClass::Strong),
                ClassArg::Powerful => enumerate_class(&p, &shape, TableauClass::Powerful),
                ClassArg::Hikita => enumerate_hikita(&hessenberg, &shape),
                ClassArg::KSet => {
                    let n = hessenberg.n();
                    if n < 5 || shape.parts() != [n - 2, 2] {
                        bail!("the k-set is defined for the shape (n-2,2) with n > 4");
                    }
                    k_set(&p)?
                }
            };
            for t in &ts {
                println!("{t}\t{}", inv_p(&p, t));
            }
            println!("# {} tableaux, sum of q^inv = {}", ts.len(), inv_generating_function(&p, &ts).pretty());
        }
        Command::Hikita { hessenberg, shape, prob: _, zeta, h } => {
            if shape.size() != hessenberg.n() {
                bail!("{shape} is not a partition of {}", hessenberg.n());
            }
            let mut engine = Hikita::new(&hessenberg);
            for t in enumerate_hikita(&hessenberg, &shape) {
                let value = if zeta {
                    engine.zeta(&t)?.to_string()
                } else if h {
                    engine.h(&t)?.to_string()
                } else {
                    engine.prob(&t)?.to_string()
                };
                println!("{t}\t{value}");
            }
        }
        Command::Verify { conjecture, max_n, jobs, report, cache, extended, audit_seed } => {
            let mut cfg = RunConfig::new(conjecture, max_n);
            cfg.jobs = jobs;
            cfg.cache = Cache::resolve(cache.as_deref());
            cfg.extended = extended;
            cfg.audit_seed = audit_seed;
            let out = run_verification(&cfg)?;
            match &report {
                Some(path) => emit_report(&out.reports, path)?,
                None => {
                    for r in &out.reports {
                        println!("{}", r.to_line());
                    }
                }
            }
            let s = Summary::of(&out.reports);
            eprintln!(
                "{conjecture} up to n = {max_n}: {} holds, {} fails, {} skipped; cache hits {}, audited {}, audit mismatches {}",
                s.holds, s.fails, s.skipped, out.stats.cache_hits, out.stats.audited, out.stats.audit_mismatches
            );
            if !s.all_hold() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Formula { path, kchain } => {
            let f = match (path, kchain) {
                (Some(n), _) => path_formula(n)?,
                (None, Some(g)) => kchain_formula(&g)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            print_expansion(&f);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
