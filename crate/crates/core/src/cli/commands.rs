use serde_json::{json, Map, Value};

use super::config::RunConfig;
use super::{Command, MotiveLayout, Outcome};
use crate::checks::{mine_expression, named_check, CheckParams, CheckStatus};
use crate::error::{Error, Result};
use crate::expr::{parse_bipoly, parse_tuple};
use crate::field::{Field, Fq};
use crate::laurent::LaurentSeries;
use crate::motive::{MotiveSystem, Status};
use crate::poly::BiPoly;
use crate::relations::{CertificateKind, Residual};
use crate::special::{
    anderson_thakur, carlitz_factorial, chang_eval, mcpl, mzv, omega, pi_carlitz, power_sum, AlphaTuple, AtPoly, IndexTuple,
};
use crate::tate::{Profile, TateElem};

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn series_outcome(label: String, s: &LaurentSeries, params: Map<String, Value>) -> Outcome {
    Outcome { params, result: json!(s.to_json()), text: vec![format!("{label} = {s}")], exit: 0 }
}

fn tate_text(label: &str, x: &TateElem) -> Vec<String> {
    let mut lines = vec![format!("{label} (through t^{}):", x.tdeg())];
    for (m, c) in x.coeffs().iter().enumerate() {
        lines.push(format!("  t^{m}: {c}"));
    }
    lines
}

fn at_json(at: &AtPoly) -> Value {
    json!({ "n": at.n, "h": at.h.to_int_matrix(), "verified_upto": at.verified_upto })
}

/// `1;t+theta` style lists; "at" selects H_{n_j - 1}; absent means all ones.
fn resolve_alphas(field: &Field, idx: &IndexTuple, spec: Option<&str>, cfg: &RunConfig) -> Result<Vec<BiPoly>> {
    match spec.map(str::trim) {
        None => Ok(vec![BiPoly::one(field); idx.depth()]),
        Some("at") => idx.weights().iter().map(|&n| anderson_thakur(field, n, &cfg.caps).map(|a| a.h)).collect(),
        Some(list) => {
            let alphas = list.split(';').map(|s| parse_bipoly(field, s)).collect::<Result<Vec<_>>>()?;
            if alphas.len() != idx.depth() {
                return Err(Error::Config(format!("{} alphas given for depth {}", alphas.len(), idx.depth())));
            }
            Ok(alphas)
        }
    }
}

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig, field: &Field) -> Result<Outcome> {
    let prec = cfg.prec;
    match cmd {
        Command::Zeta { tuple } => {
            let idx = parse_tuple(tuple)?;
            let z = mzv(field, &idx, prec, &cfg.caps)?;
            Ok(series_outcome(format!("zeta{idx}"), &z, params(&[("tuple", json!(tuple))])))
        }
        Command::Pi => Ok(series_outcome("pi".into(), &pi_carlitz(field, prec), Map::new())),
        Command::Omega => {
            let om = omega(field, cfg.tdeg, Profile::flat(prec));
            Ok(Outcome { params: Map::new(), result: json!(om.to_json()), text: tate_text("Omega", &om), exit: 0 })
        }
        Command::Powersum { deg, n } => {
            let s = power_sum(field, *deg, *n, prec, &cfg.caps)?;
            Ok(series_outcome(format!("S_{deg}({n})"), &s, params(&[("deg", json!(deg)), ("n", json!(n))])))
        }
        Command::Gamma { n } => {
            if *n == 0 {
                return Err(Error::Config("Gamma_n needs n ≥ 1".into()));
            }
            let g = carlitz_factorial(field, *n);
            Ok(Outcome {
                params: params(&[("n", json!(n))]),
                result: json!({ "n": n, "coeffs": g.to_ints() }),
                text: vec![format!("Gamma_{n} = {g}")],
                exit: 0,
            })
        }
        Command::Atpoly { n } => {
            let at = anderson_thakur(field, *n, &cfg.caps)?;
            let checked = match at.verified_upto {
                Some(i) => format!("interpolation identity verified for twists 0..={i}"),
                None => "equal to 1 for n ≤ q".into(),
            };
            Ok(Outcome {
                params: params(&[("n", json!(n))]),
                result: at_json(&at),
                text: vec![format!("H_{} = {}", n - 1, at.h), checked],
                exit: 0,
            })
        }
        Command::Mcpl { tuple, alphas } => {
            let idx = parse_tuple(tuple)?;
            let a = AlphaTuple::new(resolve_alphas(field, &idx, alphas.as_deref(), cfg)?, idx.weights().to_vec())?;
            let l = mcpl(field, &a, cfg.tdeg, Profile::flat(prec))?;
            let shown: Vec<String> = a.alphas().iter().map(|p| p.to_string()).collect();
            Ok(Outcome {
                params: params(&[("tuple", json!(tuple)), ("alphas", json!(shown.join(";")))]),
                result: json!(l.to_json()),
                text: tate_text(&format!("L{idx}"), &l),
                exit: 0,
            })
        }
        Command::MotiveVerify { layout, tuple, n, alphas, corrupt } => motive_verify(field, cfg, *layout, tuple.as_deref(), *n, alphas.as_deref(), corrupt.as_deref()),
        Command::Mine { targets, deg, confirm } => {
            let d = deg.unwrap_or(cfg.degree_bound);
            let confirm = confirm.unwrap_or(2 * prec);
            let cert = mine_expression(field, targets, d, prec, confirm, &cfg.caps)?;
            let mut text = vec![format!("{} (D={d}, N={prec})", match cert.kind {
                CertificateKind::Kernel => "kernel",
                CertificateKind::NoneAtBound => "none-at-bound",
            })];
            for (i, rel) in cert.relations.iter().enumerate() {
                let terms: Vec<String> = rel
                    .iter()
                    .zip(&cert.labels)
                    .filter(|(p, _)| !p.is_zero())
                    .map(|(p, l)| format!("({p})*{l}"))
                    .collect();
                let res = match cert.confirmations.iter().find(|(j, _)| *j == i).map(|(_, r)| *r) {
                    Some(Residual::AtLeast(v)) => format!("confirmed to O(w^{v})"),
                    Some(Residual::Exact(v)) => format!("REFUTED: residual valuation {v}"),
                    None => "unconfirmed".into(),
                };
                text.push(format!("  {} = 0    [{res}]", terms.join(" + ")));
            }
            let exit = if cert.all_confirmed() { 0 } else { 1 };
            Ok(Outcome {
                params: params(&[("targets", json!(targets)), ("deg", json!(d)), ("confirm", json!(confirm))]),
                result: json!(cert.to_json()),
                text,
                exit,
            })
        }
        Command::Check { name, n, n1, n2, tuple, twist, deg } => {
            let mut p = CheckParams::new(prec);
            p.n = *n;
            p.n1 = *n1;
            p.n2 = *n2;
            p.tuple = tuple.as_deref().map(parse_tuple).transpose()?;
            p.twist = *twist;
            p.tdeg = cfg.tdeg;
            p.degree_bound = deg.unwrap_or(cfg.degree_bound);
            p.caps = cfg.caps;
            let r = named_check(name, field, &p)?;
            let exit = match r.status {
                CheckStatus::Pass | CheckStatus::NotApplicable => 0,
                CheckStatus::Fail => 1,
                CheckStatus::Inconclusive => 3,
            };
            let mut echo = vec![("name", json!(name)), ("twist", json!(twist)), ("deg", json!(p.degree_bound))];
            for (k, v) in [("n", n), ("n1", n1), ("n2", n2)] {
                if let Some(v) = v {
                    echo.push((k, json!(v)));
                }
            }
            if let Some(t) = tuple {
                echo.push(("tuple", json!(t)));
            }
            Ok(Outcome { params: params(&echo), result: json!(r), text: vec![format!("{name}: {}", r.status), r.detail.clone()], exit })
        }
        Command::ChangEval { tuple, twist } => {
            let idx = parse_tuple(tuple)?;
            let r = chang_eval(field, &idx, *twist, prec, &cfg.caps)?;
            let text = vec![
                format!("lhs = {}", r.lhs),
                format!("rhs = {}", r.rhs),
                format!("{} (t-truncation {}, window {:?})", if r.agrees { "match" } else { "MISMATCH" }, r.tdeg, r.window),
            ];
            Ok(Outcome {
                params: params(&[("tuple", json!(tuple)), ("twist", json!(twist))]),
                result: json!({
                    "agrees": r.agrees,
                    "window": r.window,
                    "tdeg": r.tdeg,
                    "at_polys": r.at_polys.iter().map(at_json).collect::<Vec<_>>(),
                    "lhs": r.lhs.to_json(),
                    "rhs": r.rhs.to_json(),
                }),
                text,
                exit: if r.agrees { 0 } else { 1 },
            })
        }
    }
}

fn motive_verify(
    field: &Field,
    cfg: &RunConfig,
    layout: MotiveLayout,
    tuple: Option<&str>,
    n: Option<u32>,
    alphas: Option<&str>,
    corrupt: Option<&str>,
) -> Result<Outcome> {
    let mut echo = vec![];
    let mut sys = match layout {
        MotiveLayout::General => {
            let t = tuple.ok_or_else(|| Error::Config("--layout general needs --tuple".into()))?;
            echo.push(("tuple", json!(t)));
            let idx = parse_tuple(t)?;
            let a = resolve_alphas(field, &idx, Some(alphas.unwrap_or("at")), cfg)?;
            MotiveSystem::build_general(field, &AlphaTuple::new(a, idx.weights().to_vec())?, cfg.tdeg, cfg.prec)?
        }
        MotiveLayout::Depth1 => {
            let n = n.ok_or_else(|| Error::Config("--layout depth1 needs --n".into()))?;
            echo.push(("n", json!(n)));
            let list: Vec<BiPoly> = match alphas.map(str::trim) {
                None => vec![BiPoly::one(field)],
                Some("") => Vec::new(),
                Some(s) => s.split(';').map(|p| parse_bipoly(field, p)).collect::<Result<_>>()?,
            };
            MotiveSystem::build_depth1(field, &list, n, cfg.tdeg, cfg.prec)?
        }
    };
    echo.push(("layout", json!(format!("{layout:?}").to_lowercase())));
    if let Some(spec) = corrupt {
        let nums: Vec<i64> = spec
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad --corrupt {spec:?}"))))
            .collect::<Result<_>>()?;
        let [i, j, m, e] = nums[..] else {
            return Err(Error::Parse("--corrupt expects row,col,t-degree,w-exponent".into()));
        };
        if i < 0 || j < 0 || m < 0 || i as usize >= sys.size() || j as usize >= sys.size() {
            return Err(Error::Config(format!("--corrupt {spec} is outside the {0}x{0} system", sys.size())));
        }
        sys.corrupt_psi(i as usize, j as usize, m as usize, e, Fq::ONE)?;
        echo.push(("corrupt", json!(spec)));
    }
    let report = sys.verify()?;
    let det = sys.det_phi_shape();
    let mut text = vec![format!(
        "{}: {}x{} system, window t^0..t^{} x O(w^{})",
        report.status,
        sys.size(),
        sys.size(),
        report.tdeg,
        report.w_prec.map_or("exact".into(), |w| w.to_string())
    )];
    for e in &report.entries {
        let detail = e.mismatch.map_or(String::new(), |(m, w)| format!(" first mismatch at t^{m}, w^{w}"));
        text.push(format!("  Psi[{}][{}]: {}{detail}", e.row, e.col, e.status));
    }
    if let Some((c, s)) = det {
        text.push(format!("det Phi = {}*(t - theta)^{s}", c.to_int()));
    }
    let mut result = json!(report.to_json());
    result["det_phi"] = json!(det.map(|(c, s)| json!({ "c": c.to_int(), "exponent": s })));
    result["mismatches"] = json!(report.entries.iter().filter_map(|e| e.mismatch.map(|m| (e.row, e.col, m))).collect::<Vec<_>>());
    let exit = match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    };
    Ok(Outcome { params: params(&echo), result, text, exit })
}
