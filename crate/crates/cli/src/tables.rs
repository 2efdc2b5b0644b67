//! Reproduction of the five reference tables as CSV files.
//!
//! * `table1.csv`: census of the `T(p) < 0` class for k = 2..120 (step 2)
//!   over the first N primes (N = 2e7 at `--full` scale).
//! * `table2.csv`: the constants `C_k` for the same k range.
//! * `table3.csv` / `table4.csv`: Q, L, R, both bounds for k = 2 and
//!   k = 1 (mod 3) rows respectively.
//! * `table5.csv`: the `+`/`-` machinery for k = 0 (mod 3).

use std::path::Path;

use pairbias_core::census::{CensusJob, CensusScope};
use pairbias_core::constants::{bias_bounds_with, BiasDetail, EulerProduct, RTable};
use pairbias_core::primes::SieveConfig;

use crate::format::{sig6_trimmed, table_value};
use crate::report::{table_style_bound, table_style_reversed};
use crate::runner::run_census_job;
use crate::{write_artifact, CliError};

pub fn table1_ks() -> Vec<u64> {
    (2..=120).step_by(2).collect()
}

pub fn table3_ks() -> Vec<u64> {
    (2..=164).step_by(6).collect()
}

pub fn table4_ks() -> Vec<u64> {
    (4..=184).step_by(6).collect()
}

pub fn table5_ks() -> Vec<u64> {
    (6..=156).step_by(6).collect()
}

fn join_q(primes: &[u64]) -> String {
    let strs: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
    strs.join(";")
}

pub fn write_all_tables(
    dir: &Path,
    n_primes: u64,
    cutoff_r: u64,
    cutoff_euler: u64,
    threads: usize,
    progress: bool,
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;

    // Table 1: sign census over the first N primes.
    let ks = table1_ks();
    let job = CensusJob::new(
        &ks,
        CensusScope::FirstNPrimes(n_primes),
        SieveConfig::default(),
    )?;
    let results = run_census_job(&job, threads, progress)?;
    let mut t1 = String::from("k,t_neg_count,pair_count,proportion\n");
    for c in &results {
        let prop = c.t_neg as f64 / c.pair_count as f64;
        t1.push_str(&format!(
            "{},{},{},{}\n",
            c.k,
            c.t_neg,
            c.pair_count,
            table_value(prop)
        ));
    }
    write_artifact(Some(&dir.join("table1.csv")), &t1)?;

    // Table 2: the constants C_k from one shared Euler product.
    let euler = EulerProduct::compute(cutoff_euler)?;
    let mut t2 = String::from("k,c_k\n");
    for &k in &ks {
        let ck = pairbias_core::constants::c_k_with(&euler, k)?;
        t2.push_str(&format!("{},{}\n", k, sig6_trimmed(ck.value_f64())));
    }
    write_artifact(Some(&dir.join("table2.csv")), &t2)?;

    // Tables 3-5: Q sets, series and certified bounds.
    let rt = RTable::build(cutoff_r)?;
    for (name, rows) in [("table3.csv", table3_ks()), ("table4.csv", table4_ks())] {
        let mut out = String::from("k,q_set,l_k,r_k,bound_biased,r_k_prime,bound_reversed\n");
        for &k in &rows {
            let rep = bias_bounds_with(&rt, &euler, k)?;
            let BiasDetail::Unbalanced {
                q_set,
                l_k,
                r_k,
                r_k_prime,
                ..
            } = rep.detail
            else {
                unreachable!("rows of tables 3-4 have chi3 != 0");
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                k,
                join_q(&q_set.primes),
                table_value(l_k.to_f64()),
                table_value(r_k.value_f64()),
                table_value(table_style_bound(&q_set.primes, l_k, &r_k)),
                table_value(r_k_prime.value_f64()),
                table_value(table_style_reversed(&r_k_prime))
            ));
        }
        write_artifact(Some(&dir.join(name)), &out)?;
    }

    let mut t5 =
        String::from("k,q_minus,l_minus,r_minus,bound_neg,q_plus,l_plus,r_plus,bound_pos\n");
    for &k in &table5_ks() {
        let rep = bias_bounds_with(&rt, &euler, k)?;
        let BiasDetail::Balanced { minus, plus } = rep.detail else {
            unreachable!("rows of table 5 have 3 | k");
        };
        t5.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            k,
            join_q(&minus.q_set.primes),
            table_value(minus.l.to_f64()),
            table_value(minus.r.value_f64()),
            table_value(table_style_bound(&minus.q_set.primes, minus.l, &minus.r)),
            join_q(&plus.q_set.primes),
            table_value(plus.l.to_f64()),
            table_value(plus.r.value_f64()),
            table_value(table_style_bound(&plus.q_set.primes, plus.l, &plus.r))
        ));
    }
    write_artifact(Some(&dir.join("table5.csv")), &t5)
}
