use expo_scatter::scattering::{jost_minus, jost_plus, nearest_redundant_point, s_matrix};
use expo_scatter::spectrum::{
    bound_residue_contour, find_bound_states, heisenberg_report, redundant_pole,
    redundant_pole_sum, Method,
};
use expo_scatter::{ComplexScalar, Error as LibError, ModelParams};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::config::{Command, HeisenbergMethod, RunConfig};
use crate::output::{json_float, Cell, Table};
use crate::CliError;

/// Everything a command produces before rendering.
pub struct Report {
    pub params: Map<String, Value>,
    pub table: Table,
    pub diagnostics: Map<String, Value>,
}

fn model(cfg: &RunConfig) -> Result<ModelParams, CliError> {
    let alpha = cfg
        .alpha
        .ok_or_else(|| CliError::Usage("--alpha is required for this command".into()))?;
    Ok(ModelParams::new(cfg.a, alpha)?)
}

fn base_params(cfg: &RunConfig) -> Map<String, Value> {
    let digits = cfg.precision_digits as usize;
    let mut m = Map::new();
    m.insert("a".into(), json_float(cfg.a, digits));
    if let Some(alpha) = cfg.alpha {
        m.insert("alpha".into(), json_float(alpha, digits));
    }
    m.insert("precision_digits".into(), Value::from(cfg.precision_digits));
    m
}

pub fn run(cfg: &RunConfig, command: &Command) -> Result<Report, CliError> {
    match command {
        Command::BoundStates => bound_states(cfg),
        Command::Heisenberg { method } => heisenberg(cfg, *method),
        Command::Figure1 {
            alpha_min,
            alpha_max,
            steps,
        } => figure1(cfg, *alpha_min, *alpha_max, *steps),
        Command::SEval { k_re, k_im } => s_eval(cfg, *k_re, *k_im),
        Command::Redundant {
            n_max,
            r_sum,
            terms,
        } => redundant(cfg, *n_max, *r_sum, *terms),
    }
}

fn bound_states(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let states = find_bound_states(&p)?;
    let mut table = Table::new(vec!["index", "kappa", "nu", "norm_integral", "c_l_squared"]);
    for (i, bs) in states.iter().enumerate() {
        table.push(vec![
            Cell::Int(i as i64),
            Cell::Float(bs.kappa),
            Cell::Float(bs.nu),
            Cell::Float(bs.norm_integral),
            Cell::Float(bs.c_l_squared),
        ]);
    }
    let mut diagnostics = Map::new();
    diagnostics.insert("count".into(), Value::from(states.len()));
    let bound = (p.alpha() * p.alpha() / 4.0).floor() as u64;
    diagnostics.insert("count_upper_bound".into(), Value::from(bound));
    Ok(Report {
        params: base_params(cfg),
        table,
        diagnostics,
    })
}

fn heisenberg(cfg: &RunConfig, method: HeisenbergMethod) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let digits = cfg.precision_digits as usize;
    let primary = match method {
        HeisenbergMethod::Contour => Method::Contour,
        _ => Method::AnalyticResidue,
    };
    let report = heisenberg_report(&p, primary)?;
    let mut columns = vec!["kappa", "lhs", "rhs", "R_H", "abs_R_H_minus_1"];
    if method == HeisenbergMethod::Both {
        columns.push("cross_method_discrepancy");
    }
    let mut table = Table::new(columns);
    let mut worst = 0.0f64;
    let mut worst_cross = 0.0f64;
    for (i, bs) in report.bound_states.iter().enumerate() {
        let (lhs, ratio) = (report.lhs[i], report.ratios[i]);
        worst = worst.max((ratio - 1.0).abs());
        let mut row = vec![
            Cell::Float(bs.kappa),
            Cell::Float(lhs),
            Cell::Float(bs.c_l_squared),
            Cell::Float(ratio),
            Cell::Float((ratio - 1.0).abs()),
        ];
        if method == HeisenbergMethod::Both {
            let contour = bound_residue_contour(&p, bs, &report.bound_states)?;
            let cross = (contour - lhs).abs() / lhs.abs();
            worst_cross = worst_cross.max(cross);
            row.push(Cell::Float(cross));
        }
        table.push(row);
    }
    let mut params = base_params(cfg);
    let name = match method {
        HeisenbergMethod::Residue => "residue",
        HeisenbergMethod::Contour => "contour",
        HeisenbergMethod::Both => "both",
    };
    params.insert("method".into(), Value::from(name));
    let mut diagnostics = Map::new();
    diagnostics.insert("count".into(), Value::from(report.bound_states.len()));
    diagnostics.insert("max_abs_R_H_minus_1".into(), json_float(worst, digits));
    if method == HeisenbergMethod::Both {
        diagnostics.insert(
            "max_cross_method_discrepancy".into(),
            json_float(worst_cross, digits),
        );
    }
    Ok(Report {
        params,
        table,
        diagnostics,
    })
}

fn sweep_threads() -> Option<usize> {
    std::env::var("SMX_MAX_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

type Branches = Vec<(f64, f64)>;

fn figure1(
    cfg: &RunConfig,
    alpha_min: f64,
    alpha_max: f64,
    steps: usize,
) -> Result<Report, CliError> {
    if !(alpha_min > 0.0 && alpha_max >= alpha_min) || steps == 0 {
        return Err(CliError::Usage(
            "need 0 < alpha-min <= alpha-max and steps >= 1".into(),
        ));
    }
    ModelParams::new(cfg.a, alpha_min)?;
    let digits = cfg.precision_digits as usize;
    let alphas: Vec<f64> = (0..steps)
        .map(|i| match steps {
            1 => alpha_min,
            _ => alpha_min + (alpha_max - alpha_min) * i as f64 / (steps - 1) as f64,
        })
        .collect();
    let work = |alpha: &f64| -> Result<Branches, LibError> {
        let p = ModelParams::new(cfg.a, *alpha)?;
        Ok(find_bound_states(&p)?
            .iter()
            .map(|bs| (bs.kappa, bs.heisenberg_ratio()))
            .collect())
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = sweep_threads() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    // Results come back in alpha order whatever the completion order.
    let sweep: Vec<Branches> =
        pool.install(|| alphas.par_iter().map(work).collect::<Result<_, _>>())?;

    let mut table = Table::new(vec!["alpha", "branch_index", "kappa", "R_H"]);
    let mut worst = 0.0f64;
    let mut max_branches = 0;
    let mut onset = None;
    for (alpha, branches) in alphas.iter().zip(&sweep) {
        if onset.is_none() && !branches.is_empty() {
            onset = Some(*alpha);
        }
        max_branches = max_branches.max(branches.len());
        // Descending kappa: the oldest branch, which entered first, comes first.
        for (l, (kappa, ratio)) in branches.iter().enumerate() {
            worst = worst.max((ratio - 1.0).abs());
            table.push(vec![
                Cell::Float(*alpha),
                Cell::Int(l as i64),
                Cell::Float(*kappa),
                Cell::Float(*ratio),
            ]);
        }
    }
    let mut params = base_params(cfg);
    params.insert("alpha_min".into(), json_float(alpha_min, digits));
    params.insert("alpha_max".into(), json_float(alpha_max, digits));
    params.insert("steps".into(), Value::from(steps));
    let mut diagnostics = Map::new();
    diagnostics.insert("max_abs_R_H_minus_1".into(), json_float(worst, digits));
    diagnostics.insert("max_branch_count".into(), Value::from(max_branches));
    diagnostics.insert(
        "first_alpha_with_bound_state".into(),
        onset.map_or(Value::Null, |a| json_float(a, digits)),
    );
    Ok(Report {
        params,
        table,
        diagnostics,
    })
}

fn s_eval(cfg: &RunConfig, k_re: f64, k_im: f64) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let digits = cfg.precision_digits as usize;
    let k = ComplexScalar::new(k_re, k_im);
    let s = s_matrix(&p, k)?;
    let fp = jost_plus(&p, k)?;
    let fm = jost_minus(&p, k)?;
    let (nearest, distance) = nearest_redundant_point(&p, k);
    let mut table = Table::new(vec![
        "k_re",
        "k_im",
        "s_re",
        "s_im",
        "abs_s",
        "jost_plus_re",
        "jost_plus_im",
        "jost_minus_re",
        "jost_minus_im",
        "nearest_singular_im",
        "nearest_singular_distance",
    ]);
    table.push(vec![
        Cell::Float(k_re),
        Cell::Float(k_im),
        Cell::Float(s.re),
        Cell::Float(s.im),
        Cell::Float(s.norm()),
        Cell::Float(fp.re),
        Cell::Float(fp.im),
        Cell::Float(fm.re),
        Cell::Float(fm.im),
        Cell::Float(nearest.im),
        Cell::Float(distance),
    ]);
    let mut params = base_params(cfg);
    params.insert("k_re".into(), json_float(k_re, digits));
    params.insert("k_im".into(), json_float(k_im, digits));
    let mut diagnostics = Map::new();
    let kind = if nearest.im > 0.0 {
        "redundant pole"
    } else {
        "redundant zero"
    };
    diagnostics.insert("nearest_singular_kind".into(), Value::from(kind));
    Ok(Report {
        params,
        table,
        diagnostics,
    })
}

fn redundant(cfg: &RunConfig, n_max: u32, r_sum: f64, terms: u32) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let digits = cfg.precision_digits as usize;
    if n_max == 0 || terms == 0 || !(r_sum > 0.0) {
        return Err(CliError::Usage(
            "need n-max >= 1, terms >= 1 and r-sum > 0".into(),
        ));
    }
    let mut table = Table::new(vec![
        "n",
        "k_n_im",
        "residue_analytic",
        "residue_contour",
        "discrepancy",
    ]);
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        let pole = redundant_pole(&p, n)?;
        worst = worst.max(pole.discrepancy());
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Float(pole.k_n.im),
            Cell::Float(pole.residue_analytic),
            Cell::Float(pole.residue_contour),
            Cell::Float(pole.discrepancy()),
        ]);
    }
    let (partial, closed) = redundant_pole_sum(&p, r_sum, terms)?;
    let ratio = partial / closed;
    // CSV footer: partial sum and closed form in the residue columns.
    table.footer.push(vec![
        Cell::Text("sum".into()),
        Cell::Float(r_sum),
        Cell::Float(partial),
        Cell::Float(closed),
        Cell::Float((ratio - 1.0).abs()),
    ]);
    let q = 0.5 * p.alpha() * (-r_sum / (4.0 * p.a())).exp();
    let mut params = base_params(cfg);
    params.insert("n_max".into(), Value::from(n_max));
    params.insert("r_sum".into(), json_float(r_sum, digits));
    params.insert("terms".into(), Value::from(terms));
    let mut sum = Map::new();
    sum.insert("q".into(), json_float(q, digits));
    sum.insert("partial_sum".into(), json_float(partial, digits));
    sum.insert("closed_form".into(), json_float(closed, digits));
    sum.insert("ratio".into(), json_float(ratio, digits));
    sum.insert(
        "closed_form_convention".into(),
        Value::from("(pi/a) q I1(2q)"),
    );
    let mut diagnostics = Map::new();
    diagnostics.insert("max_discrepancy".into(), json_float(worst, digits));
    diagnostics.insert("redundant_sum".into(), Value::Object(sum));
    Ok(Report {
        params,
        table,
        diagnostics,
    })
}
