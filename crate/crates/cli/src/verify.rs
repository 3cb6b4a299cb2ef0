use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use hookbranch::identities::{
    complement_equivalence_check, verify, ComplementFamily, VerificationDetail,
};
use hookbranch::partition::partitions_of;
use hookbranch::{IdentityId, Partition, VerificationReport, VerifyMode, VerifyOptions};
use serde_json::json;

use crate::report::{pass_word, OutputArgs, Report};
use crate::require_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Full expansion up to --expand-limit cells, random evaluation above.
    Auto,
    Expand,
    Random,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// wbr, wbr-x, wbr-y, wbr-xy, cwbr, cwbr-x, cwbr-y, cwbr-xy or y2.
    #[arg(long)]
    pub identity: IdentityId,
    /// Partition as a digit string or comma list; may be repeated.
    #[arg(long, required_unless_present = "n", conflicts_with = "n")]
    pub partition: Vec<Partition>,
    /// Check every partition of n.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Evaluation points per comparison in random mode.
    #[arg(long, default_value_t = 8)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest size expanded symbolically.
    #[arg(long, default_value_t = 8)]
    pub expand_limit: usize,
    /// Compare with the ordinary identity of the complementary partition.
    #[arg(long)]
    pub complement: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn family(id: IdentityId) -> Result<ComplementFamily> {
    Ok(match id {
        IdentityId::CwbrY | IdentityId::Y2Reduced => ComplementFamily::Y,
        IdentityId::Cwbr => ComplementFamily::Cwbr,
        IdentityId::CwbrX => ComplementFamily::X,
        IdentityId::CwbrXy => ComplementFamily::Xy,
        other => bail!("--complement needs a complementary identity, not {other}"),
    })
}

fn mode_for(args: &VerifyArgs, lambda: &Partition) -> Result<VerifyMode> {
    let random = || -> Result<VerifyMode> {
        Ok(VerifyMode::RandomEval {
            trials: args.trials,
            seed: require_seed(args.seed, "random evaluation")?,
        })
    };
    match args.mode {
        Mode::Random => random(),
        Mode::Expand if lambda.size() > args.expand_limit => {
            bail!(
                "{lambda} has more than {} cells; raise --expand-limit or use --mode random",
                args.expand_limit
            )
        }
        Mode::Expand => Ok(VerifyMode::FullExpansion),
        Mode::Auto if lambda.size() > args.expand_limit => random(),
        Mode::Auto => Ok(VerifyMode::FullExpansion),
    }
}

fn describe(r: &VerificationReport) -> String {
    let how = match &r.detail {
        VerificationDetail::Expansion {
            lhs_terms,
            rhs_terms,
            difference_terms,
        } if lhs_terms == rhs_terms && *difference_terms == 0 => format!("full expansion, {lhs_terms} terms each side"),
        VerificationDetail::Expansion {
            lhs_terms,
            rhs_terms,
            difference_terms,
        } => format!("full expansion, {lhs_terms} and {rhs_terms} terms, difference {difference_terms} terms"),
        VerificationDetail::RandomEval {
            trials,
            seed,
            error_bound,
            failing_point,
        } => {
            let mut s = format!("random evaluation, {trials} points, seed {seed}, error bound {error_bound:.3e}");
            if let Some(pt) = failing_point {
                s.push_str(&format!(", differs at {pt}"));
            }
            s
        }
    };
    let note = r
        .note
        .as_ref()
        .map(|n| format!(" [{n}]"))
        .unwrap_or_default();
    format!(
        "{} {}: {} ({how}){note}",
        r.identity,
        r.partition,
        pass_word(r.verdict)
    )
}

pub fn run(args: &VerifyArgs) -> Result<Report> {
    let partitions: Vec<Partition> = match args.n {
        Some(n) => partitions_of(n)
            .into_iter()
            .filter(|l| !(l.is_empty() && (args.identity.is_ordinary() || args.complement)))
            .collect(),
        None => args.partition.clone(),
    };
    if partitions.is_empty() {
        bail!("no partitions to check");
    }
    let family = args.complement.then(|| family(args.identity)).transpose()?;
    let options = VerifyOptions {
        expansion_bound: usize::MAX,
        strict: true,
        ..VerifyOptions::default()
    };
    let config = json!({
        "identity": args.identity,
        "partitions": partitions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "mode": format!("{:?}", args.mode).to_lowercase(),
        "trials": args.trials,
        "seed": args.seed,
        "expand_limit": args.expand_limit,
        "complement": args.complement,
    });
    let mut report = Report::new("verify", config);
    let mut passed = 0;
    for lambda in &partitions {
        let mode = mode_for(args, lambda)?;
        let r = match family {
            Some(f) => complement_equivalence_check(lambda, f, mode)?,
            None => verify(args.identity, lambda, mode, &options)?,
        };
        passed += usize::from(r.verdict);
        report.line(describe(&r));
        report.result(serde_json::to_value(&r)?, r.verdict);
    }
    report.line(format!("{passed}/{} verified", partitions.len()));
    Ok(report)
}
