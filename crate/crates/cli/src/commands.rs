//! Subcommand bodies. Each returns the text to print so that tests can call
//! them without spawning the binary.

use std::time::Instant;

use homcount::count::{count_tuples_exp_route_from, count_tuples_from, normalize};
use homcount::lattice::transitive_counts;
use homcount::oracle::{oracle_census_parallel, oracle_census_with_budget, OracleBudget, OracleError};
use homcount::series::egf_exp_formula;
use homcount::{enumerate_hnf, lambda_table, LambdaTable, Nat, OrbitPolynomial};
use serde::Serialize;
use thiserror::Error;

use crate::cache::LambdaCache;
use crate::output::{render_orbits, render_sequence, Format, Kind, Sequence};

#[derive(Error, Debug)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub format: Format,
    /// Emit the `#` comment header in b-file output.
    pub header: bool,
    pub cache: Option<LambdaCache>,
}

impl Settings {
    pub fn new(format: Format) -> Self {
        Settings {
            format,
            header: true,
            cache: None,
        }
    }

    fn lambda(&self, r: u32, len: usize) -> LambdaTable {
        match &self.cache {
            Some(cache) => cache.get_or_compute(r, len, |w| eprintln!("warning: {w}")).0,
            None => lambda_table(r, len),
        }
    }

    fn header<'a>(&self, text: &'a str) -> Option<&'a str> {
        self.header.then_some(text)
    }
}

/// `lambda_r(1..=max)`, origin 1.
pub fn lambda_cmd(s: &Settings, r: u32, max: usize) -> Result<String, CommandError> {
    if max == 0 {
        return Err(CommandError::Usage("--max must be at least 1".into()));
    }
    let table = s.lambda(r, max);
    let header = format!("lambda_{r}(n): subgroups of index n in Z^{r}, n = 1..{max}");
    Ok(render_sequence(
        &Sequence {
            r,
            kind: Kind::Lambda,
            origin: 1,
            values: table.values().values(),
            egf_normalized: false,
        },
        s.format,
        s.header(&header),
    ))
}

/// `T_r(0..=max)`, or `T_r(n)/n!` with `egf_normalized`, or the orbit
/// polynomials with `orbits`.
pub fn count_cmd(s: &Settings, r: u32, max: usize, orbits: bool, egf_normalized: bool) -> Result<String, CommandError> {
    if r == 0 {
        return Err(CommandError::Usage("--r must be at least 1".into()));
    }
    if orbits && egf_normalized {
        return Err(CommandError::Usage(
            "--orbits and --egf-normalized cannot be combined: T_r(n,k)/n! is not integral".into(),
        ));
    }
    if orbits {
        let table = s.lambda(r, max.max(1));
        let polys = egf_exp_formula(&transitive_counts(&table), max).expect("table covers max");
        let header = format!("T_{r}(n,k): actions of Z^{r} on n points with k orbits; columns n k count");
        return Ok(render_orbits(r, &polys, s.format, s.header(&header)));
    }
    let prev = s.lambda(r - 1, max.max(1));
    let mut values = count_tuples_from(&prev, max);
    let header = if egf_normalized {
        values = normalize(&values);
        format!("T_{r}(n)/n!: commuting {r}-tuples in S_n divided by n!, n = 0..{max}")
    } else {
        format!("T_{r}(n): commuting {r}-tuples in S_n, n = 0..{max}")
    };
    Ok(render_sequence(
        &Sequence {
            r,
            kind: Kind::Tuples,
            origin: 0,
            values: &values,
            egf_normalized,
        },
        s.format,
        s.header(&header),
    ))
}

/// `(n-1)! lambda_r(n)` for `n = 1..=max`.
pub fn transitive_cmd(s: &Settings, r: u32, max: usize) -> Result<String, CommandError> {
    if max == 0 {
        return Err(CommandError::Usage("--max must be at least 1".into()));
    }
    let table = s.lambda(r, max);
    let counts = transitive_counts(&table);
    let header = format!("transitive actions of Z^{r} on n points, n = 1..{max}");
    Ok(render_sequence(
        &Sequence {
            r,
            kind: Kind::Transitive,
            origin: 1,
            values: counts.values(),
            egf_normalized: false,
        },
        s.format,
        s.header(&header),
    ))
}

#[derive(Serialize)]
struct HnfDoc {
    r: usize,
    n: u64,
    bases: Vec<Vec<Vec<u64>>>,
}

/// Every HNF basis of rank `r` and index `n`, one per line.
pub fn hnf_cmd(s: &Settings, r: usize, n: u64) -> Result<String, CommandError> {
    if r == 0 || n == 0 {
        return Err(CommandError::Usage("--r and --n must be at least 1".into()));
    }
    let bases: Vec<_> = enumerate_hnf(r, n).collect();
    Ok(match s.format {
        Format::Json => {
            let doc = HnfDoc {
                r,
                n,
                bases: bases.iter().map(|b| b.rows().to_vec()).collect(),
            };
            serde_json::to_string(&doc).expect("plain data serializes") + "\n"
        }
        Format::Plain | Format::Bfile => {
            let mut out = String::new();
            if s.format == Format::Bfile && s.header {
                out.push_str(&format!("# {} HNF bases of index {n} in Z^{r}\n", bases.len()));
            }
            for b in &bases {
                out.push_str(&format!("{b}\n"));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct OracleDoc {
    r: usize,
    n: usize,
    total: String,
    by_orbits: std::collections::BTreeMap<usize, String>,
}

/// Brute-force census of one cell.
pub fn oracle_cmd(s: &Settings, r: usize, n: usize, parallel: bool, budget: &OracleBudget) -> Result<String, CommandError> {
    let c = if parallel {
        oracle_census_parallel(r, n, budget)?
    } else {
        oracle_census_with_budget(r, n, budget)?
    };
    Ok(match s.format {
        Format::Json => {
            let doc = OracleDoc {
                r,
                n,
                total: c.total.to_string(),
                by_orbits: c.by_orbits.iter().map(|(k, v)| (*k, v.to_string())).collect(),
            };
            serde_json::to_string(&doc).expect("plain data serializes") + "\n"
        }
        Format::Plain => {
            let mut out = format!("total {}\n", c.total);
            for (k, v) in &c.by_orbits {
                out.push_str(&format!("orbits {k}: {v}\n"));
            }
            out
        }
        Format::Bfile => {
            let mut out = String::new();
            if s.header {
                out.push_str(&format!(
                    "# commuting {r}-tuples in S_{n} by orbit count (brute force), total {}\n",
                    c.total
                ));
            }
            for (k, v) in &c.by_orbits {
                out.push_str(&format!("{k} {v}\n"));
            }
            out
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    Pass,
    Mismatch(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub cells: Vec<(usize, usize, CellOutcome)>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        !self.cells.iter().any(|(_, _, o)| matches!(o, CellOutcome::Mismatch(_)))
    }

    pub fn checked(&self) -> usize {
        self.cells.iter().filter(|(_, _, o)| !matches!(o, CellOutcome::Skipped(_))).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (r, n, outcome) in &self.cells {
            let line = match outcome {
                CellOutcome::Pass => format!("r={r} n={n}: pass\n"),
                CellOutcome::Mismatch(why) => format!("r={r} n={n}: FAIL {why}\n"),
                CellOutcome::Skipped(why) => format!("r={r} n={n}: skipped ({why})\n"),
            };
            out.push_str(&line);
        }
        let verdict = if self.all_pass() { "pass" } else { "FAIL" };
        out.push_str(&format!("{verdict}: {} cells checked\n", self.checked()));
        out
    }
}

/// Oracle against formulas for `n = 0..=n_max`: totals from both routes,
/// the orbit histogram, and the transitive count.
pub fn verify(r: usize, n_max: usize, budget: &OracleBudget) -> VerifyReport {
    let rank = r as u32;
    let prev = lambda_table(rank.saturating_sub(1), n_max.max(1));
    let table = lambda_table(rank, n_max.max(1));
    let product_route = if r >= 1 { count_tuples_from(&prev, n_max) } else { Vec::new() };
    let exp_route = count_tuples_exp_route_from(&table, n_max);
    let polys = egf_exp_formula(&transitive_counts(&table), n_max).expect("table covers n_max");
    let transitive = transitive_counts(&table);

    let mut cells = Vec::new();
    for n in 0..=n_max {
        let census = match oracle_census_with_budget(r, n, budget) {
            Ok(c) => c,
            Err(e) => {
                cells.push((r, n, CellOutcome::Skipped(e.to_string())));
                continue;
            }
        };
        let mut problems = Vec::new();
        if census.total != product_route[n] {
            problems.push(format!("total {} vs product route {}", census.total, product_route[n]));
        }
        if census.total != exp_route[n] {
            problems.push(format!("total {} vs exponential route {}", census.total, exp_route[n]));
        }
        if census.as_polynomial() != polys[n] {
            problems.push(format!("histogram {} vs {}", census.as_polynomial(), polys[n]));
        }
        if n >= 1 && census.count(1) != *transitive.get(n) {
            problems.push(format!("transitive {} vs {}", census.count(1), transitive.get(n)));
        }
        let outcome = if problems.is_empty() {
            CellOutcome::Pass
        } else {
            CellOutcome::Mismatch(problems.join("; "))
        };
        cells.push((r, n, outcome));
    }
    VerifyReport { cells }
}

/// Wall-clock timings for the lambda table and both counting routes.
pub fn bench(r: u32, max: usize) -> String {
    let mut out = String::new();
    let t = Instant::now();
    let table = lambda_table(r, max.max(1));
    out.push_str(&format!("lambda_{r}(1..{max}): {:.3} s\n", t.elapsed().as_secs_f64()));

    let t = Instant::now();
    let counts = count_tuples_from(&table, max);
    out.push_str(&format!(
        "T_{}(0..{max}) product route: {:.3} s ({} digits at n = {max})\n",
        r + 1,
        t.elapsed().as_secs_f64(),
        counts.last().map(Nat::to_string).unwrap_or_default().len()
    ));

    let t = Instant::now();
    let _ = count_tuples_exp_route_from(&table, max);
    out.push_str(&format!(
        "T_{r}(0..{max}) exponential route: {:.3} s\n",
        t.elapsed().as_secs_f64()
    ));
    out
}

/// Orbit polynomials, exposed for callers that want them as data.
pub fn orbit_polynomials(s: &Settings, r: u32, max: usize) -> Vec<OrbitPolynomial> {
    let table = s.lambda(r, max.max(1));
    egf_exp_formula(&transitive_counts(&table), max).expect("table covers max")
}
