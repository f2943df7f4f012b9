use clap::ValueEnum;
use serde_json::{json, Value};

use qnil::dcb::{canonical_low_slice, dcb_slice, low_coefficients};
use qnil::finitetype::{longest_word, verify_theta_star, FiniteTypeData};
use qnil::minors::{minor_element, verify_minor_twist, verify_tsystem, verify_tsystem_twist, MinorSpec, Sign};
use qnil::pbw::{PbwChart, Composition};
use qnil::rootdata::{word_to_json, CartanDatum, WeylWord};
use qnil::twist::{
    cofinite_twist_check, reverse_coeff_table, reversed_word, theta_inverse, verify_dcb_twist, verify_pbw_reversal_in,
    verify_rootvector_images,
};
use qnil::uqfull::QuantumGroup;
use qnil::uqminus::FElement;
use qnil::Error;

use crate::config::{MinorSign, Options, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Pbw,
    Dcb,
    Glow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Rootvectors,
    Pbwrev,
    Dcbtwist,
    Revlex,
    Cofinite,
    Tsystem,
    Tsystemtwist,
    Finitetype,
    All,
}

pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DivisionByZero | Error::Inconsistent(_) | Error::Assertion(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub struct Report {
    pub command: String,
    pub passed: bool,
    pub result: Value,
}

const DEFAULT_HEIGHT: i64 = 4;

fn setup(opts: &Options) -> Result<(QuantumGroup, WeylWord), Failure> {
    let c = opts.cartan()?;
    let w = opts.word(&c)?;
    Ok((QuantumGroup::new(c), w))
}

pub fn basis(kind: BasisKind, opts: &Options) -> Result<Report, Failure> {
    let (qg, w) = setup(opts)?;
    let h = opts.height(DEFAULT_HEIGHT)?;
    let chart = PbwChart::new(&qg, &w)?;
    let mut slices = Vec::new();
    for nu in chart.weights_up_to(h) {
        let v = match kind {
            BasisKind::Pbw => {
                let mut items = Vec::new();
                for c in chart.compositions(&nu) {
                    items.push(json!({
                        "c": c,
                        "low": chart.f_low(&qg, &c)?.to_json(),
                        "up": chart.f_up(&qg, &c)?.to_json(),
                    }));
                }
                json!({"weight": neg(&nu), "elements": items})
            }
            BasisKind::Dcb => dcb_slice(&qg, &chart, &nu)?.to_json(),
            BasisKind::Glow => {
                let s = dcb_slice(&qg, &chart, &nu)?;
                let lows = canonical_low_slice(&qg, &chart, &s)?;
                let m = low_coefficients(&s);
                json!({
                    "weight": neg(&nu),
                    "labels": s.labels,
                    "coefficients": m.iter().map(|r| r.iter().map(|x| x.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "elements": lows.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                })
            }
        };
        slices.push(v);
    }
    let name = match kind {
        BasisKind::Pbw => "basis pbw",
        BasisKind::Dcb => "basis dcb",
        BasisKind::Glow => "basis glow",
    };
    Ok(Report {
        command: name.into(),
        passed: true,
        result: json!({"cartan": qg.cartan().to_json(), "word": word_to_json(&w), "height": h, "slices": slices}),
    })
}

fn neg(nu: &[i64]) -> Vec<i64> {
    nu.iter().map(|x| -x).collect()
}

fn parse_element(c: &CartanDatum, text: &str) -> Result<FElement, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("--element: {e}")))?;
    let x = FElement::from_json(&v)?;
    if x.terms().keys().flatten().any(|&i| i as usize >= c.rank()) {
        return Err(Failure::Usage("--element uses an index outside the Cartan datum".into()));
    }
    Ok(x)
}

/// `Θ_{w^{-1}}` of an element of `U_q^-(w)`, given as `--element` or as the
/// dual canonical basis element with `--label`.
pub fn twist(opts: &Options) -> Result<Report, Failure> {
    let (qg, w) = setup(opts)?;
    let chart = PbwChart::new(&qg, &w)?;
    let x = match (&opts.element, &opts.label) {
        (Some(e), None) => parse_element(qg.cartan(), e)?,
        (None, Some(l)) => {
            let c: Composition = Options::ints(l, "label")?;
            if c.len() != w.len() || c.iter().any(|&x| x < 0) {
                return Err(Failure::Usage("--label must be a composition of the word's length".into()));
            }
            let s = dcb_slice(&qg, &chart, &chart.weight_of(&c))?;
            s.element(&c).cloned().ok_or_else(|| Failure::Internal("label missing from its slice".into()))?
        }
        _ => return Err(Failure::Usage("give exactly one of --element and --label".into())),
    };
    let coeffs = chart.expand(&qg, &x)?;
    if !coeffs.residual.is_empty() {
        return Err(Failure::Usage("the element does not lie in U_q^-(w)".into()));
    }
    let img = theta_inverse(&qg, &w, &x)?;
    let rchart = PbwChart::new(&qg, &reversed_word(&w))?;
    let rcoeffs = rchart.expand(&qg, &img)?;
    Ok(Report {
        command: "twist".into(),
        passed: rcoeffs.residual.is_empty(),
        result: json!({
            "word": word_to_json(&w),
            "element": x.to_json(),
            "coordinates": coeffs.to_json(),
            "image": img.to_json(),
            "image_coordinates": rcoeffs.to_json(),
        }),
    })
}

pub fn minor(opts: &Options) -> Result<Report, Failure> {
    let c = opts.cartan()?;
    let qg = QuantumGroup::new(c.clone());
    let lam = opts.lambda.as_deref().ok_or_else(|| UsageError("missing --lambda".into()))?;
    let lambda = c.weight_from_fundamental(&Options::ints(lam, "lambda")?)?;
    if !c.is_dominant(&lambda) {
        return Err(Failure::Usage("--lambda must be dominant".into()));
    }
    let u = Options::word_of(&c, Some(opts.u.as_deref().unwrap_or("")), "u")?;
    let w = Options::word_of(&c, Some(opts.w.as_deref().unwrap_or("")), "w")?;
    let sign = match opts.sign.unwrap_or(MinorSign::Lowest) {
        MinorSign::Lowest => Sign::Lowest,
        MinorSign::Highest => Sign::Highest,
    };
    let spec = MinorSpec { lambda, u, w: w.clone(), sign };
    let x = minor_element(&qg, &spec)?;
    // lowest minors lie in U_q^-(w), highest ones in U_q^-(u^{-1})
    let chart_word = match (&opts.chart, sign) {
        (Some(t), _) => Options::word_of(&c, Some(t), "chart")?,
        (None, Sign::Lowest) => c.reduce_word(&w),
        (None, Sign::Highest) => reversed_word(&c.reduce_word(&spec.u)),
    };
    if !c.is_reduced(&chart_word) {
        return Err(Failure::Usage("--chart is not reduced".into()));
    }
    let chart = PbwChart::new(&qg, &chart_word)?;
    let coeffs = chart.expand(&qg, &x)?;
    Ok(Report {
        command: "minor".into(),
        passed: true,
        result: json!({
            "minor": spec.to_json(),
            "element": x.to_json(),
            "chart": word_to_json(&chart_word),
            "coordinates": coeffs.to_json(),
            "in_chart": coeffs.residual.is_empty(),
        }),
    })
}

pub fn verify(kind: VerifyKind, opts: &Options) -> Result<Report, Failure> {
    if kind == VerifyKind::All {
        return crate::suite::run(opts);
    }
    let c = opts.cartan()?;
    let qg = QuantumGroup::new(c.clone());
    let h = opts.height(DEFAULT_HEIGHT)?;
    let (name, passed, result) = match kind {
        VerifyKind::Rootvectors => {
            let w = opts.word(&c)?;
            let flags = verify_rootvector_images(&qg, &w)?;
            ("verify rootvectors", flags.iter().all(|&b| b), json!({"word": word_to_json(&w), "per_root": flags}))
        }
        VerifyKind::Pbwrev => {
            let w = opts.word(&c)?;
            let chart = PbwChart::new(&qg, &w)?;
            let rchart = PbwChart::new(&qg, &reversed_word(&w))?;
            let mut rows = Vec::new();
            let mut ok = true;
            for nu in chart.weights_up_to(h) {
                for comp in chart.compositions(&nu) {
                    let r = verify_pbw_reversal_in(&qg, &chart, &rchart, &comp)?;
                    ok &= r;
                    rows.push(json!({"c": comp, "equal": r}));
                }
            }
            ("verify pbwrev", ok, json!({"word": word_to_json(&w), "height": h, "labels": rows}))
        }
        VerifyKind::Dcbtwist => {
            let w = opts.word(&c)?;
            let chart = PbwChart::new(&qg, &w)?;
            let mut ok = true;
            let mut reps = Vec::new();
            for nu in chart.weights_up_to(h) {
                let r = verify_dcb_twist(&qg, &w, &nu)?;
                ok &= r.passed();
                reps.push(r.to_json());
            }
            ("verify dcbtwist", ok, json!({"word": word_to_json(&w), "height": h, "slices": reps}))
        }
        VerifyKind::Revlex => {
            let w = opts.word(&c)?;
            let chart = PbwChart::new(&qg, &w)?;
            let mut ok = true;
            let mut reps = Vec::new();
            for nu in chart.weights_up_to(h) {
                let r = reverse_coeff_table(&qg, &w, &nu)?;
                ok &= r.passed();
                reps.push(r.to_json());
            }
            ("verify revlex", ok, json!({"word": word_to_json(&w), "height": h, "slices": reps}))
        }
        VerifyKind::Cofinite => {
            let w = opts.word(&c)?;
            let (ok, v) = cofinite_all(&qg, &w, h)?;
            ("verify cofinite", ok, v)
        }
        VerifyKind::Tsystem | VerifyKind::Tsystemtwist => {
            let w = opts.word(&c)?;
            let order = opts.order(&c)?;
            let pairs = match (opts.b, opts.d) {
                (Some(b), Some(d)) => vec![(b, d)],
                (None, None) => admissible_pairs(&w),
                _ => return Err(Failure::Usage("give both --b and --d, or neither".into())),
            };
            let mut ok = true;
            let mut reps = Vec::new();
            for (b, d) in pairs {
                if kind == VerifyKind::Tsystem {
                    let r = verify_tsystem(&qg, &w, b, d, &order)?;
                    ok &= r.passed();
                    reps.push(r.to_json());
                } else {
                    let r = verify_tsystem_twist(&qg, &w, b, d, &order)?;
                    ok &= r.passed();
                    reps.push(r.to_json());
                }
            }
            let name = if kind == VerifyKind::Tsystem { "verify tsystem" } else { "verify tsystemtwist" };
            (name, ok, json!({"word": word_to_json(&w), "instances": reps}))
        }
        VerifyKind::Finitetype => {
            let w = match &opts.word {
                Some(_) => Some(opts.word(&c)?),
                None => None,
            };
            let r = verify_theta_star(&qg, w.as_deref(), h as usize, h)?;
            let data = finite_type_summary(&c)?;
            ("verify finitetype", r.passed(), json!({"data": data, "report": r.to_json()}))
        }
        VerifyKind::All => unreachable!(),
    };
    Ok(Report { command: name.into(), passed, result })
}

/// Pairs `1 <= b < d <= ℓ` with `i_b = i_d`.
pub fn admissible_pairs(w: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 1..=w.len() {
        for d in b + 1..=w.len() {
            if w[b - 1] == w[d - 1] {
                out.push((b, d));
            }
        }
    }
    out
}

/// Every dual canonical basis element of `U_q^-` up to height `h` that lies
/// in `T_w(U_q^-)`, checked against the cofinite twist formula. Needs finite
/// type for a chart of the whole of `U_q^-`.
pub fn cofinite_all(qg: &QuantumGroup, w: &[usize], h: i64) -> Result<(bool, Value), Failure> {
    let w0 = longest_word(qg.cartan())?;
    let chart = PbwChart::new(qg, &w0)?;
    let mut ok = true;
    let mut rows = Vec::new();
    for nu in chart.weights_up_to(h) {
        let s = dcb_slice(qg, &chart, &nu)?;
        for (label, g) in s.labels.iter().zip(&s.elements) {
            let pulled = qg.braid_word(w, -1, &qg.lift(g));
            if pulled.to_fminus().is_none() {
                continue;
            }
            let r = cofinite_twist_check(qg, w, g, &chart)?;
            ok &= r.passed();
            let mut v = r.to_json();
            v["element_label"] = json!(label);
            rows.push(v);
        }
    }
    Ok((ok, json!({"word": word_to_json(w), "chart": word_to_json(&w0), "height": h, "elements": rows})))
}

pub fn finite_type_summary(c: &CartanDatum) -> Result<Value, Failure> {
    Ok(FiniteTypeData::new(c)?.to_json())
}

pub fn minor_twist_all(qg: &QuantumGroup, max_len: usize) -> Result<(bool, Value), Failure> {
    let c = qg.cartan();
    let w0 = longest_word(c)?;
    let elems = c.elements_up_to(max_len);
    let mut ok = true;
    let mut rows = Vec::new();
    for i in 0..c.rank() {
        let lambda = c.fundamental(i);
        for u1 in &elems {
            for u2 in &elems {
                if MinorSpec::lowest(lambda.clone(), u1, u2).nu(c).is_err() {
                    continue;
                }
                let r = verify_minor_twist(qg, &lambda, u1, u2, &w0)?;
                ok &= r.passed();
                rows.push(json!({
                    "lambda": i + 1,
                    "u1": word_to_json(u1),
                    "u2": word_to_json(u2),
                    "passed": r.passed(),
                }));
            }
        }
    }
    Ok((ok, json!({"w": word_to_json(&w0), "instances": rows})))
}
