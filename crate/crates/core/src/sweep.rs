//! Scans a range of moduli (and optionally every offset scheme) for the
//! degree, sign-cycle and 4-cycle conditions on Γ.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gamma::{
    build_gamma, check_sign_cycles, degree_violations, find_short_cycles, is_prime, OffsetScheme,
};

pub const P_MIN: u32 = 3;
pub const P_MAX: u32 = 64;
/// Largest modulus for which every scheme is enumerated.
pub const ALL_SCHEMES_P_MAX: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeMode {
    DefaultOnly,
    AllSchemes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub p: u32,
    pub prime: bool,
    pub scheme: OffsetScheme,
    pub degree_ok: bool,
    pub sign_cycles_ok: bool,
    pub four_cycles: usize,
    pub witness: Option<String>,
}

impl SweepRow {
    pub fn pass(&self) -> bool {
        self.degree_ok && self.sign_cycles_ok && self.four_cycles == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepTable {
    pub mode: SchemeMode,
    pub rows: Vec<SweepRow>,
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

impl SweepTable {
    pub fn rows_for(&self, p: u32) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.p == p)
    }

    /// Moduli at which the first listed scheme (the default one in
    /// `DefaultOnly` mode) passes.
    pub fn passing_moduli(&self) -> Vec<u32> {
        let mut ps: Vec<u32> = self.rows.iter().filter(|r| r.pass()).map(|r| r.p).collect();
        ps.dedup();
        ps
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            SchemeMode::DefaultOnly => "default",
            SchemeMode::AllSchemes => "all",
        };
        writeln!(out, "sweep schemes={mode} rows={}", self.rows.len()).unwrap();
        for r in &self.rows {
            write!(
                out,
                "p={} prime={} {} degree={} sign-cycles={} four-cycles={} verdict={}",
                r.p,
                if r.prime { "yes" } else { "no" },
                r.scheme,
                verdict(r.degree_ok),
                verdict(r.sign_cycles_ok),
                r.four_cycles,
                verdict(r.pass()),
            )
            .unwrap();
            if let Some(w) = &r.witness {
                write!(out, " witness={w}").unwrap();
            }
            out.push('\n');
        }
        if self.mode == SchemeMode::AllSchemes {
            let mut p = None;
            for r in &self.rows {
                if p == Some(r.p) {
                    continue;
                }
                p = Some(r.p);
                let all = self.rows_for(r.p).count();
                let ok = self.rows_for(r.p).filter(|r| r.pass()).count();
                writeln!(out, "summary p={} schemes={all} passing={ok}", r.p).unwrap();
            }
        }
        out
    }
}

fn pairs(p: u32) -> Vec<[u32; 2]> {
    (0..p)
        .flat_map(|a| (a + 1..p).map(move |b| [a, b]))
        .collect()
}

fn schemes_for(p: u32, mode: SchemeMode) -> Vec<OffsetScheme> {
    match mode {
        SchemeMode::DefaultOnly => vec![OffsetScheme::default()],
        SchemeMode::AllSchemes => {
            let ps = pairs(p);
            let mut out = Vec::with_capacity(ps.len().pow(3));
            for &e1 in &ps {
                for &e2 in &ps {
                    for &e3 in &ps {
                        out.push(OffsetScheme { e1, e2, e3 });
                    }
                }
            }
            out
        }
    }
}

fn evaluate(p: u32, scheme: OffsetScheme) -> Result<SweepRow> {
    let g = build_gamma(p, scheme)?;
    let degree = degree_violations(&g);
    let signs = check_sign_cycles(&g);
    let cycles = find_short_cycles(&g, 4)?;
    let witness = if let Some((v, d)) = degree.first() {
        Some(format!("vertex {v} has degree {d}"))
    } else if let Some(c) = cycles.first() {
        Some(format!("{}-cycle {c}", c.len()))
    } else {
        signs
            .quadrants
            .iter()
            .find_map(|q| q.witness.clone())
            .or_else(|| (!signs.pass()).then(|| "edges inside one family".to_string()))
    };
    Ok(SweepRow {
        p,
        prime: is_prime(p),
        scheme: g.scheme(),
        degree_ok: degree.is_empty(),
        sign_cycles_ok: signs.pass(),
        four_cycles: cycles.len(),
        witness,
    })
}

/// Rows come out sorted by `p`, then by scheme in lexicographic order, so
/// the table is identical for every thread count.
pub fn sweep(p_min: u32, p_max: u32, mode: SchemeMode, parallelism: usize) -> Result<SweepTable> {
    if p_min < P_MIN || p_max > P_MAX || p_min > p_max {
        return Err(Error::Config(format!(
            "p range {p_min}..={p_max} must lie within {P_MIN}..={P_MAX}"
        )));
    }
    if mode == SchemeMode::AllSchemes && p_max > ALL_SCHEMES_P_MAX {
        return Err(Error::Config(format!(
            "all-schemes sweep is limited to p <= {ALL_SCHEMES_P_MAX}"
        )));
    }
    if parallelism == 0 {
        return Err(Error::Config("parallelism must be at least 1".into()));
    }
    let jobs: Vec<(u32, OffsetScheme)> = (p_min..=p_max)
        .flat_map(|p| schemes_for(p, mode).into_iter().map(move |s| (p, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let rows = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, s)| evaluate(p, s))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepTable { mode, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweep_small_range() {
        let t = sweep(5, 13, SchemeMode::DefaultOnly, 2).unwrap();
        assert_eq!(t.rows.len(), 9);
        let ok = t.passing_moduli();
        assert!(ok.contains(&11) && ok.contains(&13), "{ok:?}");
        assert!(!ok.contains(&5) && !ok.contains(&7));
        for r in t.rows.iter().filter(|r| !r.pass()) {
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn all_schemes_counts() {
        let t = sweep(5, 5, SchemeMode::AllSchemes, 4).unwrap();
        assert_eq!(t.rows.len(), 1000);
        assert!(t.to_text().contains("summary p=5 schemes=1000"));
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(sweep(2, 5, SchemeMode::DefaultOnly, 1).is_err());
        assert!(sweep(9, 5, SchemeMode::DefaultOnly, 1).is_err());
        assert!(sweep(5, 65, SchemeMode::DefaultOnly, 1).is_err());
        assert!(sweep(5, 17, SchemeMode::AllSchemes, 1).is_err());
        assert!(sweep(5, 6, SchemeMode::DefaultOnly, 0).is_err());
    }
}
