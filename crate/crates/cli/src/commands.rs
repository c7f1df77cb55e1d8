use permpat::asymptotics::verify_profile;
use permpat::bounds::{self, BoundValue};
use permpat::coloring::{check_coloring_lemma, composite_pattern, merge_convolution_bound, red_blue_color, Color, PatternTriple};
use permpat::enumerate::{
    check_inv_monotone, count_avoiders, inversion_triangle_with, mahonian_count, mahonian_row, truncated_triangle,
    SearchConfig,
};
use permpat::partition::{
    bijection_1324_forward, bijection_1324_inverse, partition_count, partition_of_132_avoider, perm_132_from_partition,
    q_count, PartitionPair,
};
use permpat::perm::{components, perm_from_inversion_table, LayerComposition};
use permpat::{Error, Perm};
use serde_json::{json, Value};

use crate::output::{render_report, render_table, Format};
use crate::{BijectCommand, BoundCommand, CheckCommand, CliError, Command, Outcome, PolyArgs, TriangleArgs, TripleArgs};

/// Exhaustive checks stop here; 10! is already 3.6 million permutations.
const EXHAUSTIVE_LIMIT: usize = 10;
/// Violations listed in a check report; the total is always given.
const LISTED_VIOLATIONS: usize = 10;

type Res = Result<Outcome, CliError>;

/// Counts as JSON numbers while they fit in `u64`, else as strings.
fn count(v: u128) -> Value {
    u64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

fn values_text(v: &[u8]) -> String {
    if v.iter().all(|&x| x <= 9) {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn triple_of(t: TripleArgs) -> PatternTriple {
    PatternTriple::new(t.sigma, t.tau, t.rho)
}

/// Every permutation of length `n`, decoded from all inversion tables.
fn all_perms(n: usize) -> Result<Vec<Perm>, Error> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::LimitExceeded {
            value: n as u64,
            limit: EXHAUSTIVE_LIMIT as u64,
        });
    }
    let mut table = vec![0u32; n];
    let mut out = Vec::new();
    loop {
        out.push(perm_from_inversion_table(&table)?);
        // Odometer over b_i <= n - 1 - i, last position fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (table[i] as usize) < n - 1 - i {
                table[i] += 1;
                break;
            }
            table[i] = 0;
        }
    }
}

pub(crate) fn dispatch(command: Command) -> Res {
    match command {
        Command::Count { pattern, n, format } => {
            let c = count_avoiders(&pattern, n)?;
            let text = render_table(
                &["n", "count"],
                &[vec![json!(n), count(c)]],
                json!({ "pattern": pattern }),
                format.unwrap_or(Format::Csv),
            )?;
            Ok(Outcome::ok(text))
        }
        Command::Triangle(args) => triangle(args),
        Command::Color(args) => color(triple_of(args.triple), &args.perm, args.format.unwrap_or(Format::Json)),
        Command::Bound(b) => bound(b),
        Command::Biject(b) => biject(b),
        Command::Check(c) => check(c),
        Command::Poly(args) => poly(args),
        Command::Mahonian { n, k, format } => {
            let rows: Vec<Vec<Value>> = match k {
                Some(k) => vec![vec![json!(n), json!(k), count(mahonian_count(n, k)?)]],
                None => mahonian_row(n)?
                    .into_iter()
                    .enumerate()
                    .map(|(k, c)| vec![json!(n), json!(k), count(c)])
                    .collect(),
            };
            let text = render_table(&["n", "k", "count"], &rows, json!({}), format.unwrap_or(Format::Csv))?;
            Ok(Outcome::ok(text))
        }
    }
}

fn triangle(args: TriangleArgs) -> Res {
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let config = SearchConfig {
        split_depth: args.split_depth,
        jobs: args.jobs,
    };
    let rows = match args.max_k {
        Some(max_k) => truncated_triangle(&args.pattern, args.n_max, max_k, &config)?,
        None => inversion_triangle_with(&args.pattern, args.n_max, &config)?
            .rows()
            .to_vec(),
    };
    let table: Vec<Vec<Value>> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(k, &c)| vec![json!(i + 1), json!(k), count(c)])
        })
        .collect();
    let extra = json!({ "pattern": args.pattern, "n_max": args.n_max });
    let text = render_table(&["n", "k", "count"], &table, extra, args.format.unwrap_or(Format::Csv))?;
    Ok(Outcome::ok(text))
}

fn color(triple: PatternTriple, perm: &Perm, format: Format) -> Res {
    let coloring = red_blue_color(perm, &triple);
    let report = check_coloring_lemma(perm, &triple);
    let mut min_blue = u8::MAX;
    let steps: Vec<Value> = perm
        .values()
        .iter()
        .zip(coloring.colors())
        .enumerate()
        .map(|(i, (&v, &c))| {
            let reason = match c {
                Color::Red => "red",
                Color::Blue if min_blue < v => "above-blue",
                Color::Blue => "completes-red-pattern",
            };
            if c == Color::Blue {
                min_blue = min_blue.min(v);
            }
            json!({ "position": i + 1, "value": v, "color": reason_color(c), "reason": reason })
        })
        .collect();
    let value = json!({
        "perm": perm,
        "sigma": triple.sigma,
        "tau": triple.tau,
        "rho": triple.rho,
        "red_pattern": triple.red_pattern(),
        "blue_pattern": triple.blue_pattern(),
        "coloring": coloring.to_string(),
        "red": values_text(&coloring.red_values(perm)),
        "blue": values_text(&coloring.blue_values(perm)),
        "red_standardized": report.red,
        "blue_standardized": report.blue,
        "avoids_composite": report.avoids_composite,
        "red_violation": report.red_violation.map(|s| s.to_string()),
        "blue_violation": report.blue_violation.map(|s| s.to_string()),
        "steps": steps,
    });
    Ok(Outcome::ok(render_report(value, format)?))
}

fn reason_color(c: Color) -> &'static str {
    match c {
        Color::Red => "R",
        Color::Blue => "B",
    }
}

fn bound_value(b: &BoundValue, extra: Value) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(b)?;
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        map.extend(more);
    }
    Ok(v)
}

fn bound(command: BoundCommand) -> Res {
    let (value, format, failed) = match command {
        BoundCommand::Layered { layers, format } => {
            let c = LayerComposition::new(layers)?;
            let b = bounds::layered_bound(&c)?;
            let v = bound_value(&b, json!({ "layers": c.to_string(), "pattern": c.to_perm() }))?;
            (v, format, false)
        }
        BoundCommand::Recursive { layers, format } => {
            let c = LayerComposition::new(layers)?;
            let b = bounds::layered_bound_recursive(&c)?;
            let v = bound_value(&b, json!({ "layers": c.to_string(), "pattern": c.to_perm() }))?;
            (v, format, false)
        }
        BoundCommand::Merge { alpha, beta, format } => {
            if !(alpha >= 0.0 && beta >= 0.0) {
                return Err(CliError::Usage("merge arguments must be non-negative".into()));
            }
            let value = bounds::sqrt_merge_combine(alpha, beta);
            let v = json!({
                "formula": "sqrt-merge",
                "value": value,
                "ln_value": value.ln(),
                "derivation": format!("(sqrt({alpha}) + sqrt({beta}))^2 = {value}"),
            });
            (v, format, false)
        }
        BoundCommand::Rho { format } => {
            let v = json!({
                "formula": "rho",
                "value": bounds::rho(),
                "ln_value": bounds::ln_rho(),
                "derivation": "e^(pi*sqrt(2/3))",
            });
            (v, format, false)
        }
        BoundCommand::Conditional { n, format } => {
            let b = bounds::conditional_1324_bound(n)?;
            let v = bound_value(&b, json!({ "n": n, "nth_root": b.nth_root(n), "rho": bounds::rho() }))?;
            (v, format, false)
        }
        BoundCommand::S132 { n, format } => {
            let b = bounds::s132_bound(n);
            let column = bounds::s132_column_bound(n).ok().map(count);
            let v = bound_value(
                &b,
                json!({
                    "n": n,
                    "nth_root": if n > 0 { Some(b.nth_root(n)) } else { None },
                    "column_sum_bound": column,
                    "limit": (std::f64::consts::PI / 3f64.sqrt()).exp(),
                }),
            )?;
            (v, format, false)
        }
        BoundCommand::Q { k, format } => {
            let b = bounds::q_bound(k);
            let holds = bounds::q_bound_holds(k)?;
            let v = bound_value(&b, json!({ "k": k, "exact": count(q_count(k)?), "strict_inequality": holds }))?;
            (v, format, false)
        }
        BoundCommand::Partition { k, format } => {
            let holds = bounds::partition_bound_holds(k)?;
            let ln = (k as f64).sqrt() * bounds::ln_rho();
            let v = json!({
                "formula": "partition",
                "k": k,
                "value": ln.exp(),
                "ln_value": ln,
                "derivation": format!("rho^sqrt(k) with k = {k}"),
                "exact": count(partition_count(k)?),
                "strict_inequality": holds,
            });
            (v, format, false)
        }
        BoundCommand::LayeredCorollary { total, format } => {
            let holds = bounds::layered_corollary_check(total)?;
            let v = json!({
                "formula": "layered-corollary",
                "total": total,
                "limit": 4 * total * total,
                "holds": holds,
            });
            (v, format, !holds)
        }
    };
    Ok(Outcome {
        text: render_report(value, format.unwrap_or(Format::Json))?,
        failed,
    })
}

fn biject(command: BijectCommand) -> Res {
    let (value, format) = match command {
        BijectCommand::B132 { perm: Some(perm), format, .. } => {
            let k = perm.inversions();
            if k >= perm.len() as u64 {
                return Err(Error::TooManyInversions {
                    perm: perm.to_string(),
                    inversions: k,
                    max: (perm.len() as u64).saturating_sub(1),
                }
                .into());
            }
            let lambda = partition_of_132_avoider(&perm)?;
            let v = json!({ "direction": "to-partition", "perm": perm, "n": perm.len(), "k": k, "partition": lambda });
            (v, format)
        }
        BijectCommand::B132 { partition: Some(lambda), n: Some(n), format, .. } => {
            let k = lambda.size() as usize;
            if n <= k {
                return Err(Error::LengthTooSmall { n, min: k + 1 }.into());
            }
            let perm = perm_132_from_partition(&lambda, n)?;
            let v = json!({ "direction": "to-perm", "partition": lambda, "n": n, "k": k, "perm": perm });
            (v, format)
        }
        BijectCommand::B132 { .. } => {
            return Err(CliError::Usage("give --perm, or --partition with --n".into()));
        }
        BijectCommand::B1324 { perm: Some(perm), format, .. } => {
            let pair = bijection_1324_forward(&perm)?;
            let v = json!({
                "direction": "to-partitions",
                "perm": perm,
                "n": perm.len(),
                "k": perm.inversions(),
                "lambda": pair.lambda,
                "mu": pair.mu,
                "components": components(&perm).len(),
            });
            (v, format)
        }
        BijectCommand::B1324 { lambda: Some(lambda), mu: Some(mu), n: Some(n), format, .. } => {
            let pair = PartitionPair::new(lambda, mu);
            let perm = bijection_1324_inverse(&pair, n)?;
            let v = json!({
                "direction": "to-perm",
                "lambda": pair.lambda,
                "mu": pair.mu,
                "n": n,
                "k": pair.size(),
                "perm": perm,
            });
            (v, format)
        }
        BijectCommand::B1324 { .. } => {
            return Err(CliError::Usage("give --perm, or --lambda, --mu and --n".into()));
        }
    };
    Ok(Outcome::ok(render_report(value, format.unwrap_or(Format::Json))?))
}

fn check_outcome(mut value: Value, violations: Vec<Value>, checked: u64, format: Option<Format>) -> Res {
    let failed = !violations.is_empty();
    if let Value::Object(map) = &mut value {
        map.insert("checked".into(), json!(checked));
        map.insert("violation_count".into(), json!(violations.len()));
        map.insert(
            "violations".into(),
            Value::Array(violations.into_iter().take(LISTED_VIOLATIONS).collect()),
        );
        map.insert("passed".into(), json!(!failed));
    }
    Ok(Outcome {
        text: render_report(value, format.unwrap_or(Format::Json))?,
        failed,
    })
}

fn check(command: CheckCommand) -> Res {
    match command {
        CheckCommand::RedBlue { triple, n_max, format } => {
            let triple = triple_of(triple);
            let mut violations = Vec::new();
            let mut checked = 0u64;
            for n in 0..=n_max {
                for perm in all_perms(n)? {
                    checked += 1;
                    let r = check_coloring_lemma(&perm, &triple);
                    if !r.passed() {
                        violations.push(json!({
                            "perm": r.perm,
                            "coloring": r.coloring,
                            "red_violation": r.red_violation.map(|s| s.to_string()),
                            "blue_violation": r.blue_violation.map(|s| s.to_string()),
                        }));
                    }
                }
            }
            let value = json!({
                "check": "red-blue",
                "sigma": triple.sigma,
                "tau": triple.tau,
                "rho": triple.rho,
                "composite": composite_pattern(&triple),
                "n_max": n_max,
            });
            check_outcome(value, violations, checked, format)
        }
        CheckCommand::CompInv { n_max, format } => {
            let mut violations = Vec::new();
            let mut checked = 0u64;
            for n in 0..=n_max {
                for perm in all_perms(n)? {
                    checked += 1;
                    let c = components(&perm).len() as u64;
                    if perm.inversions() + c < n as u64 {
                        violations.push(json!({ "perm": perm, "inversions": perm.inversions(), "components": c }));
                    }
                }
            }
            check_outcome(json!({ "check": "comp-inv", "n_max": n_max }), violations, checked, format)
        }
        CheckCommand::InvMonotone { pattern, n_max, format } => {
            let report = check_inv_monotone(&pattern, n_max)?;
            let violations = report
                .violations
                .iter()
                .map(|v| serde_json::to_value(v).map(|mut x| {
                    x["count"] = count(v.count);
                    x["next_count"] = count(v.next_count);
                    x
                }))
                .collect::<Result<Vec<_>, _>>()?;
            let checked = n_max.saturating_sub(1) as u64;
            check_outcome(
                json!({ "check": "inv-monotone", "pattern": pattern, "n_max": n_max }),
                violations,
                checked,
                format,
            )
        }
        CheckCommand::PartitionBound { k_max, format } => {
            let mut violations = Vec::new();
            for k in 1..=k_max {
                if !bounds::partition_bound_holds(k)? {
                    violations.push(json!({ "k": k, "p": count(partition_count(k)?) }));
                }
            }
            check_outcome(json!({ "check": "partition-bound", "k_max": k_max }), violations, k_max as u64, format)
        }
        CheckCommand::QBound { k_max, format } => {
            let mut violations = Vec::new();
            for k in 1..=k_max {
                if !bounds::q_bound_holds(k)? {
                    violations.push(json!({ "k": k, "q": count(q_count(k)?) }));
                }
            }
            check_outcome(json!({ "check": "q-bound", "k_max": k_max }), violations, k_max as u64, format)
        }
        CheckCommand::Convolution { triple, n_max, format } => {
            let triple = triple_of(triple);
            let composite = composite_pattern(&triple);
            let (red, blue) = (triple.red_pattern(), triple.blue_pattern());
            let a = (0..=n_max).map(|n| count_avoiders(&red, n)).collect::<Result<Vec<_>, _>>()?;
            let b = (0..=n_max).map(|n| count_avoiders(&blue, n)).collect::<Result<Vec<_>, _>>()?;
            let mut rows = Vec::new();
            let mut violations = Vec::new();
            for n in 0..=n_max {
                let s = count_avoiders(&composite, n)?;
                let bound = merge_convolution_bound(&a, &b, n)?;
                let row = json!({ "n": n, "count": count(s), "bound": count(bound) });
                if s > bound {
                    violations.push(row.clone());
                }
                rows.push(row);
            }
            let value = json!({
                "check": "convolution",
                "composite": composite,
                "red_pattern": red,
                "blue_pattern": blue,
                "n_max": n_max,
                "rows": rows,
            });
            check_outcome(value, violations, n_max as u64 + 1, format)
        }
    }
}

fn poly(args: PolyArgs) -> Res {
    let report = verify_profile(&args.pattern, args.k, args.n_max, args.window)?;
    let mut value = serde_json::to_value(&report)?;
    value["data"] = Value::Array(report.data.iter().map(|&c| count(c)).collect());
    if let Some(fit) = &report.fit {
        value["fit"]["polynomial"] = json!(fit.to_string());
    }
    Ok(Outcome::ok(render_report(value, args.format.unwrap_or(Format::Json))?))
}
