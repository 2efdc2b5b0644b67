//! Serialization of census results and per-k bias reports.
//!
//! Census CSV rows never contain floating point; all counts are exact
//! integers.  Bias reports serialize every real number as a decimal string
//! with 9 significant digits so files are byte-stable across platforms,
//! plus a `rounded` block at published-table precision (6 decimals, tiny
//! bounds in scientific notation).

use pairbias_core::census::{predicted_count, CensusResult, CensusScope};
use pairbias_core::constants::{
    c_k_with, BiasDetail, BiasReport, EulerProduct, SeriesValue, SignBound,
};
use serde::Serialize;

use crate::format::{sig9, table_value};
use crate::CliError;

/// The bound at published-table precision: computed from the series values
/// themselves, without the truncation-tail padding that the certified
/// `bound_*` fields carry.  Used only for table-precision display.
pub fn table_style_bound(q_primes: &[u64], l: pairbias_core::dd::Dd, r: &SeriesValue) -> f64 {
    let mut prod = 1.0f64;
    for &p in q_primes {
        prod *= (p - 2) as f64;
    }
    ((pairbias_core::dd::Dd::ONE - r.value / l) / pairbias_core::dd::Dd::from_f64(prod)).to_f64()
}

/// Table-style reversed-class bound `1 - R'/ln(3/2)` from the series value.
pub fn table_style_reversed(r_prime: &SeriesValue) -> f64 {
    let ln_3_2 = pairbias_core::dd::Dd::from_ratio(3, 2).ln();
    (pairbias_core::dd::Dd::ONE - r_prime.value / ln_3_2).to_f64()
}

pub fn scope_mode(scope: CensusScope) -> (&'static str, u64) {
    match scope {
        CensusScope::UpToX(x) => ("up_to_x", x),
        CensusScope::FirstNPrimes(n) => ("first_n_primes", n),
    }
}

/// Stable census schema:
/// `k,mode,bound,pair_count,t_neg,t_zero,t_pos,s_neg,s_zero,s_pos,st_agree`.
pub fn census_csv(results: &[CensusResult]) -> String {
    let mut out =
        String::from("k,mode,bound,pair_count,t_neg,t_zero,t_pos,s_neg,s_zero,s_pos,st_agree\n");
    for c in results {
        let (mode, bound) = scope_mode(c.scope);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            c.k,
            mode,
            bound,
            c.pair_count,
            c.t_neg,
            c.t_zero,
            c.t_pos,
            c.s_neg,
            c.s_zero,
            c.s_pos,
            c.st_agree
        ));
    }
    out
}

#[derive(Serialize)]
struct CensusJson {
    k: u64,
    mode: &'static str,
    bound: u64,
    pair_count: u64,
    t_neg: u64,
    t_zero: u64,
    t_pos: u64,
    s_neg: u64,
    s_zero: u64,
    s_pos: u64,
    st_agree: u64,
}

pub fn census_json(results: &[CensusResult]) -> Result<String, CliError> {
    let rows: Vec<CensusJson> = results
        .iter()
        .map(|c| {
            let (mode, bound) = scope_mode(c.scope);
            CensusJson {
                k: c.k,
                mode,
                bound,
                pair_count: c.pair_count,
                t_neg: c.t_neg,
                t_zero: c.t_zero,
                t_pos: c.t_pos,
                s_neg: c.s_neg,
                s_zero: c.s_zero,
                s_pos: c.s_pos,
                st_agree: c.st_agree,
            }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows)
        .map_err(|e| CliError::Usage(format!("json encoding failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
pub struct SeriesValueJson {
    pub value: String,
    pub tail_bound: String,
    pub cutoff: u64,
}

impl SeriesValueJson {
    fn from(sv: &SeriesValue) -> SeriesValueJson {
        SeriesValueJson {
            value: sig9(sv.value_f64()),
            tail_bound: sig9(sv.tail_bound),
            cutoff: sv.cutoff,
        }
    }
}

#[derive(Serialize)]
pub struct SignBoundJson {
    pub q_set: Vec<u64>,
    pub l: String,
    pub r: SeriesValueJson,
    pub bound: String,
}

impl SignBoundJson {
    fn from(sb: &SignBound) -> SignBoundJson {
        SignBoundJson {
            q_set: sb.q_set.primes.clone(),
            l: sig9(sb.l.to_f64()),
            r: SeriesValueJson::from(&sb.r),
            bound: sig9(sb.bound),
        }
    }
}

/// Published-table precision view of the headline quantities.
#[derive(Serialize)]
pub struct RoundedJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_k_prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_biased: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_reversed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_minus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_minus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_neg: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_plus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_plus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_pos: Option<String>,
}

#[derive(Serialize)]
pub struct BiasReportJson {
    pub k: u64,
    pub chi3: i32,
    pub c_k: SeriesValueJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_set: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_k: Option<SeriesValueJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_k_prime: Option<SeriesValueJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_biased: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_reversed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minus: Option<SignBoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plus: Option<SignBoundJson>,
    pub rounded: RoundedJson,
}

impl BiasReportJson {
    pub fn from_report(rep: &BiasReport) -> BiasReportJson {
        let mut out = BiasReportJson {
            k: rep.k,
            chi3: rep.chi3,
            c_k: SeriesValueJson::from(&rep.c_k),
            q_set: None,
            l_k: None,
            r_k: None,
            r_k_prime: None,
            bound_biased: None,
            bound_reversed: None,
            minus: None,
            plus: None,
            rounded: RoundedJson {
                l_k: None,
                r_k: None,
                r_k_prime: None,
                bound_biased: None,
                bound_reversed: None,
                l_minus: None,
                r_minus: None,
                bound_neg: None,
                l_plus: None,
                r_plus: None,
                bound_pos: None,
            },
        };
        match &rep.detail {
            BiasDetail::Unbalanced {
                q_set,
                l_k,
                r_k,
                r_k_prime,
                bound_biased,
                bound_reversed,
            } => {
                out.q_set = Some(q_set.primes.clone());
                out.l_k = Some(sig9(l_k.to_f64()));
                out.r_k = Some(SeriesValueJson::from(r_k));
                out.r_k_prime = Some(SeriesValueJson::from(r_k_prime));
                out.bound_biased = Some(sig9(*bound_biased));
                out.bound_reversed = Some(sig9(*bound_reversed));
                out.rounded.l_k = Some(table_value(l_k.to_f64()));
                out.rounded.r_k = Some(table_value(r_k.value_f64()));
                out.rounded.r_k_prime = Some(table_value(r_k_prime.value_f64()));
                out.rounded.bound_biased =
                    Some(table_value(table_style_bound(&q_set.primes, *l_k, r_k)));
                out.rounded.bound_reversed = Some(table_value(table_style_reversed(r_k_prime)));
            }
            BiasDetail::Balanced { minus, plus } => {
                out.minus = Some(SignBoundJson::from(minus));
                out.plus = Some(SignBoundJson::from(plus));
                out.rounded.l_minus = Some(table_value(minus.l.to_f64()));
                out.rounded.r_minus = Some(table_value(minus.r.value_f64()));
                out.rounded.bound_neg = Some(table_value(table_style_bound(
                    &minus.q_set.primes,
                    minus.l,
                    &minus.r,
                )));
                out.rounded.l_plus = Some(table_value(plus.l.to_f64()));
                out.rounded.r_plus = Some(table_value(plus.r.value_f64()));
                out.rounded.bound_pos = Some(table_value(table_style_bound(
                    &plus.q_set.primes,
                    plus.l,
                    &plus.r,
                )));
            }
        }
        out
    }
}

/// `k,x,pair_count,predicted,ratio` rows.
pub fn predict_csv(
    results: &[CensusResult],
    x: u64,
    euler: &EulerProduct,
) -> Result<String, CliError> {
    let mut out = String::from("k,x,pair_count,predicted,ratio\n");
    for c in results {
        let ck = c_k_with(euler, c.k)?;
        let pred = predicted_count(c.k, x as f64, ck.value_f64())?;
        let ratio = c.pair_count as f64 / pred;
        out.push_str(&format!(
            "{},{},{},{:.3},{:.6}\n",
            c.k, x, c.pair_count, pred, ratio
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_csv_schema() {
        let c = CensusResult {
            k: 2,
            scope: CensusScope::UpToX(100),
            pair_count: 8,
            t_neg: 1,
            t_zero: 3,
            t_pos: 4,
            s_neg: 0,
            s_zero: 1,
            s_pos: 7,
            st_agree: 4,
        };
        let csv = census_csv(&[c]);
        assert_eq!(
            csv,
            "k,mode,bound,pair_count,t_neg,t_zero,t_pos,s_neg,s_zero,s_pos,st_agree\n\
             2,up_to_x,100,8,1,3,4,0,1,7,4\n"
        );
    }
}
