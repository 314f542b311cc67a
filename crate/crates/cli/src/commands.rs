use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use anyhow::{Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ekr_core::cycle::{rotate_labels, verify_lemma23_many, CyclePattern, GoodPermutation, Side};
use ekr_core::extremal::{
    scan_conjectures, verify_chvatal_for_bounded_independents, verify_ekr, RowOutcome, ScanKind,
};
use ekr_core::independent::{enumerate_independent, enumerate_stratum, stratum_count};
use ekr_core::sampler::{exact_distribution, monte_carlo, ratio_string};
use ekr_core::shifting::{random_intersecting_family, shift_full};
use ekr_core::{Family, Graph, VertexSet};

use crate::report::{Report, Status};
use crate::*;

/// Malformed arguments that clap cannot catch on its own.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn precondition(msg: impl Into<String>) -> anyhow::Error {
    ekr_core::Error::Domain(msg.into()).into()
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn ids(set: VertexSet) -> String {
    set.to_one_based()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn braces(labels: &[usize]) -> String {
    format!(
        "{{{}}}",
        labels
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn kind_label(g: &Graph) -> String {
    if g.is_p3_union() {
        "p3".into()
    } else {
        format!("claw{}", g.k())
    }
}

fn graph(args: &GraphArgs) -> Result<Graph> {
    Ok(match args.kind {
        KindArg::P3 => Graph::p3_union(args.n)?,
        KindArg::Claw => Graph::kclaw_union(args.n, args.k)?,
    })
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Shift(a) => shift(a),
        Command::Lemma23(a) => lemma23(a),
        Command::Sample(a) => sample(a),
        Command::Distribution(a) => distribution(a),
        Command::Ekr(a) => ekr(a),
        Command::Scan(a) => scan(a),
        Command::Chvatal(a) => chvatal(a),
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<Report> {
    let g = graph(&a.graph)?;
    let all = enumerate_independent(&g, a.r);
    let mut strata = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    if g.is_p3_union() {
        let range = match a.s {
            Some(s) => s..=s,
            None => 0..=a.r,
        };
        for s in range {
            let count = enumerate_stratum(&g, a.r, s)?.len();
            let formula = stratum_count(g.n(), a.r, s);
            ok &= formula == count.into();
            strata.push(json!({ "s": s, "count": count, "formula": formula.to_string() }));
            rows.push(vec![
                g.n().to_string(),
                a.r.to_string(),
                s.to_string(),
                count.to_string(),
            ]);
        }
    } else if a.s.is_some() {
        return Err(precondition(
            "centre strata are only defined for the path union",
        ));
    } else {
        rows.push(vec![
            g.n().to_string(),
            a.r.to_string(),
            String::new(),
            all.len().to_string(),
        ]);
    }
    let mut result = json!({ "graph": to_value(&g.descriptor())?, "r": a.r, "total": all.len(), "strata": strata });
    if a.members {
        let members = match a.s {
            Some(s) => enumerate_stratum(&g, a.r, s)?,
            None => all.clone(),
        };
        result["members"] = to_value(&members)?;
    }
    let mut text = format!(
        "{} n={} r={}: {} independent sets\n",
        g.descriptor().kind,
        g.n(),
        a.r,
        all.len()
    );
    for row in &rows {
        if !row[2].is_empty() {
            writeln!(text, "  s={}: {}", row[2], row[3])?;
        }
    }
    Ok(Report {
        status: Status::from_pass(ok),
        result,
        header: vec!["n", "r", "s", "count"],
        rows,
        text,
    })
}

fn read_family(g: &Graph, path: &std::path::Path) -> Result<Family> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sets: Vec<Vec<usize>> =
        serde_json::from_str(&raw).map_err(|e| precondition(format!("family file: {e}")))?;
    let mut out = Vec::with_capacity(sets.len());
    for ids in sets {
        if let Some(bad) = ids.iter().find(|&&v| v == 0 || v > g.vertex_count()) {
            return Err(precondition(format!(
                "vertex id {bad} outside 1..={}",
                g.vertex_count()
            )));
        }
        let set = VertexSet::from_indices(ids.iter().map(|v| v - 1));
        if !g.is_independent(set) {
            return Err(precondition(format!("{ids:?} is not independent")));
        }
        out.push(set);
    }
    Ok(Family::from_sets(out))
}

fn shift(a: &ShiftArgs) -> Result<Report> {
    let g = Graph::p3_union(a.n)?;
    let input = match (&a.family, a.r) {
        (Some(path), _) => read_family(&g, path)?,
        (None, Some(r)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            random_intersecting_family(&enumerate_independent(&g, r), &mut rng)
        }
        (None, None) => return Err(Usage("either --family or --r is required".into()).into()),
    };
    let (output, rep) = shift_full(&g, &input)?;
    let ok = rep.is_shifted
        && rep.intersecting
        && rep.l_intersecting
        && rep.input_size == rep.output_size;
    let result = json!({ "report": to_value(&rep)?, "input": to_value(&input)?, "output": to_value(&output)? });
    let row = vec![
        rep.input_size.to_string(),
        rep.output_size.to_string(),
        rep.is_shifted.to_string(),
        rep.intersecting.to_string(),
        rep.l_intersecting.to_string(),
        rep.passes.to_string(),
    ];
    let mut text = format!(
        "shifted {} sets in {} passes: shifted={} intersecting={} leaf-intersecting={}\n",
        rep.output_size, rep.passes, rep.is_shifted, rep.intersecting, rep.l_intersecting
    );
    for set in output.iter() {
        writeln!(text, "  {}", braces(&set.to_one_based()))?;
    }
    Ok(Report {
        status: Status::from_pass(ok),
        result,
        header: vec![
            "input_size",
            "output_size",
            "is_shifted",
            "intersecting",
            "l_intersecting",
            "passes",
        ],
        rows: vec![row],
        text,
    })
}

fn parse_sigmas(a: &Lemma23Args) -> Result<Vec<GoodPermutation>> {
    Ok(match a.sigma.as_str() {
        "identity" => vec![GoodPermutation::identity(a.n)],
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (0..a.count.max(1))
                .map(|_| GoodPermutation::random(a.n, &mut rng))
                .collect()
        }
        list => {
            let order: Vec<usize> = list
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Usage(format!("--sigma: {e}")))?;
            if order.len() != 2 * a.n {
                return Err(precondition(format!(
                    "--sigma has {} labels, expected {}",
                    order.len(),
                    2 * a.n
                )));
            }
            vec![GoodPermutation::new(order)?]
        }
    })
}

type TableRow = (usize, Vec<usize>, Vec<usize>);

// Rows `j = 1..=2n` of the two rotated patterns, each split into its long
// and short interval as in the usual table layout.
fn cycle_table(sigma: &GoodPermutation, a: &Lemma23Args) -> Result<Vec<TableRow>> {
    let n = a.n;
    let one = CyclePattern::new(a.s, a.t, a.u, Side::One);
    one.check(n)?;
    let two = CyclePattern::new(a.s, a.t, a.u, Side::Two);
    Ok((1..=2 * n)
        .map(|j| {
            let j64 = j as i64;
            (
                j,
                rotate_labels(sigma, &one.c_positions(n), j64),
                rotate_labels(sigma, &two.c_positions(n), j64),
            )
        })
        .collect())
}

fn lemma23(a: &Lemma23Args) -> Result<Report> {
    let sigmas = parse_sigmas(a)?;
    let reports = verify_lemma23_many(a.n, a.t, a.u, &sigmas)?;
    let table = cycle_table(&sigmas[0], a)?;
    let ok = reports.iter().all(|r| r.pass);
    let result = json!({
        "regime": to_value(&reports[0].regime)?,
        "reports": to_value(&reports)?,
        "table": {
            "sigma": sigmas[0].order(),
            "s": a.s,
            "rows": table.iter().map(|(j, c1, c2)| json!({ "j": j, "c1": c1, "c2": c2 })).collect::<Vec<_>>(),
        },
    });
    let rows = reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                i.to_string(),
                r.n.to_string(),
                r.t.to_string(),
                r.u.to_string(),
                to_value(&r.regime)
                    .map(|v| v.as_str().unwrap_or_default().to_string())
                    .unwrap_or_default(),
                r.family_size.to_string(),
                r.expected_family_size.to_string(),
                r.max_intersecting.to_string(),
                r.bound.to_string(),
                r.pass.to_string(),
            ]
        })
        .collect();

    let width = (2 * a.n).to_string().len();
    let cell = |labels: &[usize]| {
        let fmt = |xs: &[usize]| {
            xs.iter()
                .map(|v| format!("{v:>width$}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{{{},  {}}}", fmt(&labels[..a.t]), fmt(&labels[a.t..]))
    };
    let jw = (2 * a.n).to_string().len();
    let mut text = format!(
        "sigma = <{}>\n",
        sigmas[0]
            .order()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    for (j, c1, c2) in &table {
        writeln!(
            text,
            "C_1^{j:<jw$} = {}    C_2^{j:<jw$} = {}",
            cell(c1),
            cell(c2)
        )?;
    }
    for (i, r) in reports.iter().enumerate() {
        writeln!(
            text,
            "#{i}: {:?} family {} (expected {}), max intersecting {} <= {}{}{} {}",
            r.regime,
            r.family_size,
            r.expected_family_size,
            r.max_intersecting,
            r.bound,
            r.tight.map(|t| format!(", tight {t}")).unwrap_or_default(),
            r.pairing_ok
                .map(|p| format!(", pairing {p}"))
                .unwrap_or_default(),
            if r.pass { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(Report {
        status: Status::from_pass(ok),
        result,
        header: vec![
            "sigma_index",
            "n",
            "t",
            "u",
            "regime",
            "family_size",
            "expected_family_size",
            "max_intersecting",
            "bound",
            "pass",
        ],
        rows,
        text,
    })
}

fn sample(a: &SampleArgs) -> Result<Report> {
    let g = Graph::p3_union(a.n)?;
    let rep = monte_carlo(&g, a.r, a.s, a.draws, a.seed, a.tolerance)?;
    let ok = rep.within_tolerance && rep.outside_stratum == 0;
    let row = vec![
        rep.n.to_string(),
        rep.r.to_string(),
        rep.s.to_string(),
        rep.seed.to_string(),
        rep.draws.to_string(),
        rep.stratum_size.to_string(),
        format!("{:.4}", rep.max_deviation_se),
        rep.outside_stratum.to_string(),
        rep.within_tolerance.to_string(),
    ];
    let text = format!(
        "{} draws (seed {}) over a stratum of {}: max deviation {:.3} SE (tolerance {}), {} outside the stratum\n",
        rep.draws, rep.seed, rep.stratum_size, rep.max_deviation_se, rep.tolerance_se, rep.outside_stratum
    );
    Ok(Report {
        status: Status::from_pass(ok),
        result: to_value(&rep)?,
        header: vec![
            "n",
            "r",
            "s",
            "seed",
            "draws",
            "stratum_size",
            "max_deviation_se",
            "outside_stratum",
            "within_tolerance",
        ],
        rows: vec![row],
        text,
    })
}

fn distribution(a: &DistributionArgs) -> Result<Report> {
    let g = Graph::p3_union(a.n)?;
    let d = exact_distribution(&g, a.r, a.s, a.scheme.into())?;
    let rows = d
        .masses
        .iter()
        .map(|m| vec![ids(m.set), ratio_string(&m.mass)])
        .collect();
    let mut text = format!(
        "stratum of {} sets, expected mass {}, uniform={}\n",
        d.stratum_size,
        ratio_string(&d.expected_mass),
        d.uniform
    );
    for m in &d.masses {
        writeln!(
            text,
            "  {}  {}",
            braces(&m.set.to_one_based()),
            ratio_string(&m.mass)
        )?;
    }
    Ok(Report {
        status: Status::from_pass(d.uniform),
        result: to_value(&d)?,
        header: vec!["set", "mass"],
        rows,
        text,
    })
}

const VERDICT_HEADER: [&str; 9] = [
    "kind", "n", "k", "r", "max", "star", "is_ekr", "nodes", "millis",
];

fn ekr(a: &EkrArgs) -> Result<Report> {
    let g = graph(&a.graph)?;
    let v = verify_ekr(&g, a.r, a.mode.into(), a.budget.budget())?;
    let row = vec![
        kind_label(&g),
        v.n.to_string(),
        v.k.to_string(),
        v.r.to_string(),
        v.max_intersecting.to_string(),
        v.star_size.to_string(),
        v.is_ekr.to_string(),
        v.nodes.to_string(),
        v.millis.to_string(),
    ];
    let text = format!(
        "{} n={} r={}: max intersecting {}, largest star {} (centre {}), EKR={}\n",
        v.graph.kind, v.n, v.r, v.max_intersecting, v.star_size, v.star_centre, v.is_ekr
    );
    Ok(Report {
        status: Status::from_pass(v.is_ekr),
        result: to_value(&v)?,
        header: VERDICT_HEADER.to_vec(),
        rows: vec![row],
        text,
    })
}

fn parse_kind(s: &str) -> Result<ScanKind> {
    if s == "p3" {
        return Ok(ScanKind::P3);
    }
    s.strip_prefix("claw")
        .and_then(|k| k.parse().ok())
        .map(|k| ScanKind::Claw { k })
        .ok_or_else(|| Usage(format!("unknown kind {s:?}; use p3 or clawK")).into())
}

fn scan(a: &ScanArgs) -> Result<Report> {
    let kinds = a
        .kinds
        .iter()
        .filter(|k| !k.is_empty())
        .map(|k| parse_kind(k))
        .collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let rows = scan_conjectures(a.max_n, a.max_r, &kinds, a.mode.into(), a.budget.budget());
    let mut status = Status::Pass;
    let mut table = Vec::new();
    let mut text = String::new();
    for row in &rows {
        let head = [
            row.kind.clone(),
            row.n.to_string(),
            row.k.to_string(),
            row.r.to_string(),
        ];
        let tail = match &row.outcome {
            RowOutcome::Verdict(v) => {
                if !v.is_ekr {
                    status = Status::Fail;
                }
                writeln!(
                    text,
                    "{} n={} r={} {:?}: max {} star {} EKR={}",
                    row.kind, row.n, row.r, row.regime, v.max_intersecting, v.star_size, v.is_ekr
                )?;
                [
                    v.max_intersecting.to_string(),
                    v.star_size.to_string(),
                    v.is_ekr.to_string(),
                    v.nodes.to_string(),
                    v.millis.to_string(),
                ]
            }
            RowOutcome::Skipped { reason } => {
                if status == Status::Pass {
                    status = Status::Incomplete;
                }
                writeln!(
                    text,
                    "{} n={} r={} {:?}: skipped ({reason})",
                    row.kind, row.n, row.r, row.regime
                )?;
                [
                    String::new(),
                    String::new(),
                    "skipped".into(),
                    String::new(),
                    String::new(),
                ]
            }
            RowOutcome::Failed { reason } => {
                status = Status::Fail;
                writeln!(
                    text,
                    "{} n={} r={} {:?}: error ({reason})",
                    row.kind, row.n, row.r, row.regime
                )?;
                [
                    String::new(),
                    String::new(),
                    "error".into(),
                    String::new(),
                    String::new(),
                ]
            }
        };
        table.push(head.into_iter().chain(tail).collect());
    }
    writeln!(
        text,
        "{} rows in {} ms",
        rows.len(),
        start.elapsed().as_millis()
    )?;
    Ok(Report {
        status,
        result: json!({ "rows": to_value(&rows)? }),
        header: VERDICT_HEADER.to_vec(),
        rows: table,
        text,
    })
}

fn chvatal(a: &ChvatalArgs) -> Result<Report> {
    let g = graph(&a.graph)?;
    let start = Instant::now();
    let v = verify_chvatal_for_bounded_independents(&g, a.r, a.budget.budget())?;
    let millis = start.elapsed().as_millis();
    let row = vec![
        kind_label(&g),
        v.n.to_string(),
        g.k().to_string(),
        v.r.to_string(),
        v.max_intersecting.to_string(),
        v.star_size.to_string(),
        v.star_maximal.to_string(),
        v.nodes.to_string(),
        millis.to_string(),
    ];
    let text = format!(
        "{} n={} sets of size <= {}: {} sets, max intersecting {}, largest star {} (centre {}), star-maximal={}\n",
        v.graph.kind, v.n, v.r, v.family_size, v.max_intersecting, v.star_size, v.star_centre, v.star_maximal
    );
    Ok(Report {
        status: Status::from_pass(v.star_maximal),
        result: to_value(&v)?,
        header: VERDICT_HEADER.to_vec(),
        rows: vec![row],
        text,
    })
}
