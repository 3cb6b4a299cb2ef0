use anyhow::{bail, Result};
use clap::Args;
use hookbranch::partition::partitions_of;
use hookbranch::syt::{
    check_addition_recursion, check_new_recursions, check_removal_recursion, content_statistics,
    sum_of_squares, syt_count, RecursionStatus,
};
use hookbranch::Partition;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::report::{pass_word, OutputArgs, Report};

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub partition: Option<Partition>,
    /// Distribution of the content of the cell added by row insertion.
    #[arg(long, requires = "partition")]
    pub content: bool,
    /// Sum of (f^λ)² over the partitions of --n.
    #[arg(long, requires = "n")]
    pub sum_squares: bool,
    /// The branching recursions and their region-specific companions.
    #[arg(long, requires = "partition")]
    pub recursions: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn content(report: &mut Report, lambda: &Partition) {
    let st = content_statistics(lambda);
    let n = BigRational::from_integer(BigInt::from(lambda.size()));
    report.line(format!(
        "{:<10} {:>8} {:>12} {:>16}",
        "corner", "content", "f", "probability"
    ));
    for row in &st.table {
        report.line(format!(
            "{:<10} {:>8} {:>12} {:>16}",
            row.corner.to_string(),
            row.content,
            row.f,
            row.probability.to_string()
        ));
    }
    let ok = st.mean.is_zero() && st.variance == n;
    report.line(format!(
        "mean {}, variance {} (n = {}): {}",
        st.mean,
        st.variance,
        lambda.size(),
        pass_word(ok)
    ));
    report.result(
        json!({
            "statistic": "content",
            "partition": lambda.to_string(),
            "table": st.table.iter().map(|r| json!({
                "corner": r.corner.to_string(),
                "content": r.content,
                "f": r.f.to_string(),
                "probability": r.probability.to_string(),
            })).collect::<Vec<_>>(),
            "mean": st.mean.to_string(),
            "variance": st.variance.to_string(),
        }),
        ok,
    );
}

fn sum_squares(report: &mut Report, n: usize) {
    let total = sum_of_squares(n);
    let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
    let ok = total == fact;
    report.line(format!(
        "sum of (f^λ)² over {} partitions of {n} = {total}, {n}! = {fact}: {}",
        partitions_of(n).len(),
        pass_word(ok)
    ));
    report.result(
        json!({ "statistic": "sum_squares", "n": n, "sum": total.to_string(), "factorial": fact.to_string() }),
        ok,
    );
}

fn recursions(report: &mut Report, lambda: &Partition) {
    let removal = check_removal_recursion(lambda);
    let addition = check_addition_recursion(lambda);
    report.line(format!("removal f^λ = Σ f^(λ-c): {}", pass_word(removal)));
    report.line(format!(
        "addition (n+1) f^λ = Σ f^(λ+c): {}",
        pass_word(addition)
    ));
    report.result(json!({ "recursion": "removal", "holds": removal }), removal);
    report.result(
        json!({ "recursion": "addition", "holds": addition }),
        addition,
    );
    for c in check_new_recursions(lambda) {
        let (word, ok) = match &c.status {
            RecursionStatus::Holds => ("pass".to_string(), true),
            RecursionStatus::Fails { .. } => ("FAIL".to_string(), false),
            RecursionStatus::Skipped { reason } => (format!("skipped ({reason})"), true),
        };
        report.line(format!("{:?}: {word}", c.recursion));
        report.result(serde_json::to_value(&c).expect("serializable"), ok);
    }
}

pub fn run(args: &StatsArgs) -> Result<Report> {
    if !(args.content || args.sum_squares || args.recursions || args.partition.is_some()) {
        bail!("nothing to do: give --partition, --content, --sum-squares or --recursions");
    }
    let config = json!({
        "partition": args.partition.as_ref().map(|p| p.to_string()),
        "n": args.n,
        "content": args.content,
        "sum_squares": args.sum_squares,
        "recursions": args.recursions,
    });
    let mut report = Report::new("stats", config);
    if let Some(lambda) = &args.partition {
        let f = syt_count(lambda);
        report.line(format!("f^{lambda} = {f}"));
        report.result(json!({ "statistic": "syt_count", "partition": lambda.to_string(), "f": f.to_string() }), true);
        if args.content {
            content(&mut report, lambda);
        }
        if args.recursions {
            recursions(&mut report, lambda);
        }
    }
    if args.sum_squares {
        sum_squares(&mut report, args.n.expect("clap requires --n"));
    }
    Ok(report)
}
