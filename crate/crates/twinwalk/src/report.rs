//! Serialization of analysis results: the JSON pair-report schema and the
//! human-readable text rendering. Reports are deterministic (fixed field
//! order, fixed float formatting) and round-trip bit-identically through
//! parse → serialize.

use serde::{Deserialize, Serialize};

use crate::graph::format_rational;
use crate::transfer::{PairAnalysis, PgstStatus, Status, TimeValue};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeReport {
    pub exact: Option<String>,
    pub numeric: f64,
}

impl TimeReport {
    fn from_time(t: &TimeValue) -> Self {
        TimeReport {
            exact: t.exact.as_ref().map(|e| e.to_string()),
            numeric: t.numeric,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleReport {
    /// Exact value of angle/π when recognized.
    pub exact: Option<String>,
    /// Numeric value of angle/π.
    pub over_pi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwinReport {
    pub omega: String,
    pub eta: String,
    pub theta: String,
    pub set_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicReport {
    pub status: String,
    pub rho: Option<TimeReport>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PstReport {
    pub status: String,
    pub tau: Option<TimeReport>,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PgstReport {
    pub status: String,
    pub bound: Option<i64>,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrReport {
    pub status: String,
    pub tau: Option<TimeReport>,
    pub gamma: Option<AngleReport>,
    pub zeta: Option<AngleReport>,
    pub proper: Option<bool>,
    pub balanced: Option<bool>,
    pub gamma_irrational: Option<bool>,
    pub downstream: Option<String>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictsReport {
    pub periodic: PeriodicReport,
    pub pst: PstReport,
    pub pgst: PgstReport,
    pub fr: FrReport,
}

/// The JSON shape of one pair analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub pair: [usize; 2],
    pub kind: String,
    pub twin: Option<TwinReport>,
    pub strongly_cospectral: bool,
    pub sigma_plus: Vec<f64>,
    pub sigma_minus: Vec<f64>,
    pub delta: Option<u64>,
    pub b_list: Option<Vec<String>>,
    pub verdicts: VerdictsReport,
    pub confidence: String,
    pub outside_twin_theory: bool,
    pub notes: Vec<String>,
}

impl PairReport {
    pub fn from_analysis(pa: &PairAnalysis) -> Self {
        PairReport {
            pair: [pa.pair.0, pa.pair.1],
            kind: pa.kind.to_string(),
            twin: pa.twin.as_ref().map(|t| TwinReport {
                omega: format_rational(&t.omega),
                eta: format_rational(&t.eta),
                theta: format_rational(&t.theta),
                set_size: t.set_size,
            }),
            strongly_cospectral: pa.strongly_cospectral,
            sigma_plus: pa.sigma_plus.clone(),
            sigma_minus: pa.sigma_minus.clone(),
            delta: pa.delta,
            b_list: pa
                .b_list
                .as_ref()
                .map(|b| b.iter().map(|x| x.to_string()).collect()),
            verdicts: VerdictsReport {
                periodic: PeriodicReport {
                    status: pa.periodicity.status.to_string(),
                    rho: pa.periodicity.min_period.as_ref().map(TimeReport::from_time),
                    detail: pa.periodicity.note.clone(),
                },
                pst: PstReport {
                    status: pa.pst.status.to_string(),
                    tau: pa.pst.tau.as_ref().map(TimeReport::from_time),
                    certificate: pa.pst.certificate.clone(),
                },
                pgst: PgstReport {
                    status: pa.pgst.status.to_string(),
                    bound: match pa.pgst.status {
                        PgstStatus::ConsistentUpToBound(b) => Some(b),
                        _ => None,
                    },
                    certificate: pa.pgst.certificate.clone(),
                },
                fr: FrReport {
                    status: pa.fr.status.to_string(),
                    tau: pa.fr.tau.as_ref().map(TimeReport::from_time),
                    gamma: pa.fr.gamma_over_pi.as_ref().map(|a| AngleReport {
                        exact: a.exact.as_ref().map(|q| q.to_string()),
                        over_pi: a.numeric,
                    }),
                    zeta: pa.fr.zeta_over_pi.as_ref().map(|a| AngleReport {
                        exact: a.exact.as_ref().map(|q| q.to_string()),
                        over_pi: a.numeric,
                    }),
                    proper: pa.fr.proper,
                    balanced: pa.fr.balanced,
                    gamma_irrational: pa.fr.gamma_irrational,
                    downstream: pa.fr.downstream.clone(),
                    witness: pa.fr.witness.clone(),
                },
            },
            confidence: pa.confidence.to_string(),
            outside_twin_theory: pa.outside_twin_theory,
            notes: pa.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn show_time(t: &Option<TimeValue>) -> String {
    match t {
        Some(tv) => match &tv.exact {
            Some(e) => format!("{} = {:.12}", e, tv.numeric),
            None => format!("{:.12} (numeric)", tv.numeric),
        },
        None => "-".into(),
    }
}

fn show_status(s: Status) -> &'static str {
    match s {
        Status::Yes => "yes",
        Status::No => "no ",
        Status::Inconclusive => "???",
    }
}

/// Human-readable block for one pair analysis. Exact times print
/// symbolically next to 12-digit decimals.
pub fn render_pair_text(pa: &PairAnalysis) -> String {
    let mut out = String::new();
    let header = format!(
        "pair ({}, {})  [{}]",
        pa.pair.0, pa.pair.1, pa.kind
    );
    out.push_str(&header);
    out.push('\n');
    match &pa.twin {
        Some(t) => out.push_str(&format!(
            "  twin set: size {}, omega = {}, eta = {}, theta = {}\n",
            t.set_size,
            format_rational(&t.omega),
            format_rational(&t.eta),
            format_rational(&t.theta)
        )),
        None => out.push_str("  not a twin pair (outside twin theory; numeric screening)\n"),
    }
    out.push_str(&format!(
        "  strongly cospectral: {}\n",
        if pa.strongly_cospectral { "yes" } else { "no" }
    ));
    if !pa.sigma_plus.is_empty() || !pa.sigma_minus.is_empty() {
        let fmt_list = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{:.9}", x))
                .collect::<Vec<_>>()
                .join(", ")
        };
        out.push_str(&format!(
            "  sigma+ = [{}]   sigma- = [{}]\n",
            fmt_list(&pa.sigma_plus),
            fmt_list(&pa.sigma_minus)
        ));
    }
    if let (Some(delta), Some(b)) = (pa.delta, pa.b_list.as_ref()) {
        out.push_str(&format!(
            "  delta = {}, b = [{}]\n",
            delta,
            b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        ));
    }
    out.push_str(&format!(
        "  periodic: {}  rho = {}\n",
        show_status(pa.periodicity.status),
        show_time(&pa.periodicity.min_period)
    ));
    out.push_str(&format!(
        "  pst:      {}  tau = {}\n",
        show_status(pa.pst.status),
        show_time(&pa.pst.tau)
    ));
    out.push_str(&format!("  pgst:     {}\n", pa.pgst.status));
    let fr_extras = match (&pa.fr.proper, &pa.fr.balanced) {
        (Some(p), Some(b)) => format!("  proper = {p}, balanced = {b}"),
        _ => String::new(),
    };
    out.push_str(&format!(
        "  fr:       {}  tau = {}{}\n",
        show_status(pa.fr.status),
        show_time(&pa.fr.tau),
        fr_extras
    ));
    if let Some(g) = &pa.fr.gamma_over_pi {
        let exact = g
            .exact
            .as_ref()
            .map(|q| format!(" = ({q})*pi"))
            .unwrap_or_default();
        let irr = match pa.fr.gamma_irrational {
            Some(true) => "  [irrational multiple of pi]",
            _ => "",
        };
        out.push_str(&format!(
            "            gamma/pi = {:.12}{}{}\n",
            g.numeric, exact, irr
        ));
    }
    if let Some(d) = &pa.fr.downstream {
        out.push_str(&format!("            downstream: {d}\n"));
    }
    if let Some(w) = &pa.fr.witness {
        out.push_str(&format!("            witness: {w}\n"));
    }
    out.push_str(&format!("  confidence: {}\n", pa.confidence));
    for n in &pa.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, MatrixKind};
    use crate::transfer::analyze_pair;

    #[test]
    fn json_roundtrip_is_bit_identical() {
        let g = generate_family(&Family::CocktailParty { m: 4 }).unwrap();
        let pa = analyze_pair(&g, MatrixKind::Adjacency, 0, 1).unwrap();
        let report = PairReport::from_analysis(&pa);
        let json = report.to_json();
        let parsed: PairReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
        let json2 = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn schema_field_names() {
        let g = generate_family(&Family::Path { n: 3 }).unwrap();
        let pa = analyze_pair(&g, MatrixKind::Adjacency, 0, 2).unwrap();
        let json = PairReport::from_analysis(&pa).to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in [
            "pair",
            "kind",
            "twin",
            "strongly_cospectral",
            "sigma_plus",
            "sigma_minus",
            "delta",
            "b_list",
            "verdicts",
            "confidence",
        ] {
            assert!(value.get(key).is_some(), "missing key {key}");
        }
        let verdicts = value.get("verdicts").unwrap();
        for key in ["periodic", "pst", "pgst", "fr"] {
            assert!(verdicts.get(key).is_some(), "missing verdict {key}");
        }
        assert!(verdicts["periodic"].get("rho").is_some());
        assert!(verdicts["pst"].get("tau").is_some());
        assert!(verdicts["pgst"].get("bound").is_some());
        for key in ["tau", "gamma", "zeta", "proper", "balanced"] {
            assert!(verdicts["fr"].get(key).is_some(), "missing fr.{key}");
        }
    }

    #[test]
    fn text_render_shows_exact_time() {
        let g = generate_family(&Family::Path { n: 3 }).unwrap();
        let pa = analyze_pair(&g, MatrixKind::Adjacency, 0, 2).unwrap();
        let text = render_pair_text(&pa);
        assert!(text.contains("pi/sqrt(2)"), "text:\n{text}");
        assert!(text.contains("confidence: Exact"));
    }
}
