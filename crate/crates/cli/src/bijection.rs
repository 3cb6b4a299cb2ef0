use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use hookbranch::bijection::{
    check_exhaustive, check_sampled, demo_arrangement, phi_inverse, phi_trace, BijectionReport,
    VariantKind,
};
use hookbranch::Partition;
use serde_json::json;

use crate::report::{pass_word, OutputArgs, Report};
use crate::require_seed;

const DEMO_SHAPE: &str = "988666542";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    X,
    Y,
    Xy,
}

impl VariantArg {
    fn kind(self) -> VariantKind {
        match self {
            VariantArg::Plain => VariantKind::Plain,
            VariantArg::X => VariantKind::X,
            VariantArg::Y => VariantKind::Y,
            VariantArg::Xy => VariantKind::Xy,
        }
    }

    fn name(self) -> &'static str {
        match self {
            VariantArg::Plain => "plain",
            VariantArg::X => "x",
            VariantArg::Y => "y",
            VariantArg::Xy => "xy",
        }
    }
}

#[derive(Debug, Args)]
pub struct BijectionArgs {
    #[arg(long, required_unless_present = "demo")]
    pub partition: Option<Partition>,
    #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
    pub variant: VariantArg,
    /// Check every arrangement (the default).
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Check this many uniformly drawn arrangements instead.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Replay the built-in arrangement of the given shape.
    #[arg(long, conflicts_with_all = ["partition", "samples", "exhaustive"])]
    pub demo: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn run_demo(shape: &str, args: &BijectionArgs) -> Result<Report> {
    if shape != DEMO_SHAPE {
        bail!("no built-in arrangement for {shape}; available: {DEMO_SHAPE}");
    }
    let f = demo_arrangement();
    let t = phi_trace(&f);
    let back = phi_inverse(&t.result);
    let round_trip = back.as_ref() == Some(&f);
    let weight_ok = t.result.weight() == f.weight();
    let mut report = Report::new(
        "bijection",
        json!({ "demo": shape, "variant": args.variant.name() }),
    );
    report.line(format!("arrangement F of {}:", f.partition));
    report.line(f.to_string().trim_end());
    report.line(format!("hook walk: {}", t.walk));
    report.line("arrangement G = phi(F):");
    report.line(t.result.to_string().trim_end());
    report.line(format!("weight {}: {}", f.weight(), pass_word(weight_ok)));
    report.line(format!("phi^-1(phi(F)) = F: {}", pass_word(round_trip)));
    report.result(
        json!({
            "partition": f.partition.to_string(),
            "f": f.to_string(),
            "walk": t.walk.cells.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "g": t.result.to_string(),
            "weight": f.weight().to_string(),
            "weight_preserved": weight_ok,
            "round_trip": round_trip,
        }),
        round_trip && weight_ok,
    );
    Ok(report)
}

fn summary(r: &BijectionReport) -> String {
    let mut s = format!(
        "{}/{} round-trips {} (|F| = {}, |G| = {}, {} distinct images",
        r.round_trips,
        r.checked,
        pass_word(r.passed()),
        r.domain_size,
        r.codomain_size,
        r.distinct_images
    );
    if let Some(k) = r.inverse_round_trips {
        s.push_str(&format!(", inverse {k}/{}", r.codomain_size));
    }
    s.push(')');
    s
}

pub fn run(args: &BijectionArgs) -> Result<Report> {
    if let Some(shape) = &args.demo {
        return run_demo(shape, args);
    }
    let lambda = args.partition.clone().expect("clap requires a partition");
    let kind = args.variant.kind();
    if kind.variants(&lambda).is_empty() {
        bail!(
            "variant {} has no admissible parameters for {lambda}",
            args.variant.name()
        );
    }
    let (r, how) = match args.samples {
        Some(k) => {
            let seed = require_seed(args.seed, "--samples")?;
            (
                check_sampled(&lambda, kind, k, seed),
                format!("{k} samples, seed {seed}"),
            )
        }
        None => (check_exhaustive(&lambda, kind), "exhaustive".to_string()),
    };
    let config = json!({
        "partition": lambda.to_string(),
        "variant": args.variant.name(),
        "samples": args.samples,
        "seed": args.seed,
    });
    let mut report = Report::new("bijection", config);
    report.line(format!(
        "{lambda} {} {how}: {}",
        args.variant.name(),
        summary(&r)
    ));
    if let Some(f) = &r.first_failure {
        report.line("first failing arrangement:");
        report.line(f.to_string().trim_end());
    }
    report.result(
        json!({
            "partition": lambda.to_string(),
            "checked": r.checked,
            "round_trips": r.round_trips,
            "domain_size": r.domain_size.to_string(),
            "codomain_size": r.codomain_size.to_string(),
            "distinct_images": r.distinct_images,
            "inverse_round_trips": r.inverse_round_trips,
            "first_failure": r.first_failure.as_ref().map(|f| f.to_string()),
        }),
        r.passed(),
    );
    Ok(report)
}
