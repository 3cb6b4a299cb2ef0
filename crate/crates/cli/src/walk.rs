use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use hookbranch::hook_walks::{
    closed_form_distribution, compare_with_exact, monte_carlo_estimate, region_probability,
    Conditioning, ExactWalk, Region, WeightSystem,
};
use hookbranch::Partition;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::report::{pass_word, OutputArgs, Report};
use crate::require_seed;

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[arg(long)]
    pub partition: Partition,
    /// Start region, R1 to R10.
    #[arg(long)]
    pub region: Region,
    /// Weight 1 on every row and column within --margin of the diagram.
    #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
    pub uniform: bool,
    #[arg(long, default_value_t = 2, requires = "uniform")]
    pub margin: i64,
    /// JSON weight file: {"x": {"1": "3/2", ...}, "y": {...}}.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Monte Carlo walks; 0 reports exact values only.
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Allowed deviation in binomial standard errors.
    #[arg(long, default_value_t = 4.0)]
    pub sigma: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &WalkArgs) -> Result<Report> {
    let lambda = &args.partition;
    let w = match &args.weights {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            WeightSystem::from_json(&text)?
        }
        None => WeightSystem::uniform_window(lambda, args.margin),
    };
    let conditioning = Conditioning::Region(args.region);
    let exact = closed_form_distribution(lambda, conditioning, &w)?;
    let chain = ExactWalk::new(lambda, &w).conditional(args.region)?;
    let chain_ok = chain.probabilities == exact.probabilities;
    let start_probability = region_probability(lambda, args.region, &w)?;

    let config = json!({
        "partition": lambda.to_string(),
        "region": args.region,
        "weights": w.to_json(),
        "trials": args.trials,
        "seed": args.seed,
        "sigma": args.sigma,
    });
    let mut report = Report::new("walk", config);
    let source = match &args.weights {
        Some(path) => format!("weights from {}", path.display()),
        None => format!("uniform weights, margin {}", args.margin),
    };
    report.line(format!(
        "{lambda}, start region {} ({source}), P(start in {}) = {start_probability}",
        args.region, args.region
    ));

    let comparison = if args.trials > 0 {
        let seed = require_seed(args.seed, "Monte Carlo walks")?;
        let est = monte_carlo_estimate(lambda, args.region, &w, args.trials, seed)?;
        Some(compare_with_exact(&est, &exact, args.sigma))
    } else {
        None
    };

    match &comparison {
        None => {
            report.line(format!(
                "{:<10} {:<24} {:>10}",
                "terminal", "exact", "decimal"
            ));
            for (c, p) in &exact.probabilities {
                let d = p.to_f64().unwrap_or(f64::NAN);
                report.line(format!(
                    "{:<10} {:<24} {:>10.6}",
                    c.to_string(),
                    p.to_string(),
                    d
                ));
                report.result(
                    json!({ "terminal": c.to_string(), "exact": p.to_string(), "exact_decimal": d }),
                    true,
                );
            }
        }
        Some(rows) => {
            report.line(format!(
                "{:<10} {:<24} {:>10} {:>10} {:>9}",
                "terminal", "exact", "decimal", "estimate", "deviation"
            ));
            for row in rows {
                let dev = if row.sigma > 0.0 {
                    format!(
                        "{:.2}σ",
                        (row.estimate - row.exact_decimal).abs() / row.sigma
                    )
                } else {
                    "-".to_string()
                };
                report.line(
                    format!(
                        "{:<10} {:<24} {:>10.6} {:>10.6} {:>9} {}",
                        row.terminal.to_string(),
                        row.exact.to_string(),
                        row.exact_decimal,
                        row.estimate,
                        dev,
                        if row.within { "" } else { "outside" }
                    )
                    .trim_end(),
                );
                report.result(serde_json::to_value(row)?, row.within);
            }
            let outside = rows.iter().filter(|r| !r.within).count();
            report.line(format!(
                "{} walks, seed {}: {} of {} terminals outside {}σ",
                args.trials,
                args.seed.unwrap_or_default(),
                outside,
                rows.len(),
                args.sigma
            ));
        }
    }
    report.line(format!("total probability {}", exact.total()));
    report.line(format!(
        "closed forms agree with the Markov chain: {}",
        pass_word(chain_ok)
    ));
    report.result(
        json!({ "check": "markov_chain", "agrees": chain_ok }),
        chain_ok,
    );
    Ok(report)
}
