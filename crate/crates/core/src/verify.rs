//! Grid sweeps behind `moduli-topology verify`.
//!
//! Every grid point is an independent pure computation, so the sweeps run on
//! the rayon pool. Results are collected in parameter order, which makes the
//! reported counterexample deterministic.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::combinatorics::{factorial, pow_int, Rational};
use crate::index::chern_index;
use crate::moduli::{self, HodgeLimits};
use crate::params::ModuliParams;
use crate::projective::ProjectiveBundle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Euler,
    Betti,
    Hodge,
    Km,
    Macdonald,
    Pushforward,
    Spectral,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Euler,
        Suite::Betti,
        Suite::Hodge,
        Suite::Km,
        Suite::Macdonald,
        Suite::Pushforward,
        Suite::Spectral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euler => "euler",
            Suite::Betti => "betti",
            Suite::Hodge => "hodge",
            Suite::Km => "km",
            Suite::Macdonald => "macdonald",
            Suite::Pushforward => "pushforward",
            Suite::Spectral => "spectral",
        }
    }

    /// Parses a suite selector; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.parse().map(|suite| vec![suite])
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Grid bounds; `D` always ranges over `[-2, 2]` and `d` over the values with `0 <= m <= max_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridBounds {
    pub max_genus: u32,
    pub max_rank: u32,
    pub max_dim: i64,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            max_genus: 4,
            max_rank: 3,
            max_dim: 10,
        }
    }
}

pub const DEG_E_RANGE: std::ops::RangeInclusive<i64> = -2..=2;

impl GridBounds {
    /// All `(g, N, D, d)` with `1 <= g <= max_genus`, `1 <= N <= max_rank`,
    /// `|D| <= 2` and `0 <= m <= max_dim`, in lexicographic order.
    pub fn points(&self) -> Vec<ModuliParams> {
        let mut out = Vec::new();
        for g in 1..=self.max_genus {
            for n in 1..=self.max_rank {
                for dd in DEG_E_RANGE {
                    for m in 0..=self.max_dim {
                        // m = N d + D - (N - 1)(g - 1)
                        let numerator = m - dd + (n as i64 - 1) * (g as i64 - 1);
                        if numerator % n as i64 == 0 {
                            let d = numerator / n as i64;
                            out.push(
                                ModuliParams::new(g, n, dd, d).expect("grid parameters are valid"),
                            );
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    /// Parameters and message of the first failure in grid order.
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<12} {} passed, {} failed",
            self.suite.name(),
            self.passed,
            self.failed
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "\n  first counterexample: {first}")?;
        }
        Ok(())
    }
}

type Check = Result<(), String>;

fn describe(p: &ModuliParams) -> String {
    format!(
        "(g={}, N={}, D={}, d={}, K={})",
        p.genus(),
        p.rank(),
        p.deg_e(),
        p.deg_l(),
        p.stabilization()
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_grid<T, F>(
    suite: Suite,
    items: Vec<T>,
    label: impl Fn(&T) -> String + Sync,
    check: F,
) -> SuiteReport
where
    T: Sync,
    F: Fn(&T) -> Check + Sync,
{
    let results: Vec<Check> = items.par_iter().map(&check).collect();
    let mut report = SuiteReport {
        suite,
        passed: 0,
        failed: 0,
        first_failure: None,
    };
    for (item, result) in items.iter().zip(results) {
        match result {
            Ok(()) => report.passed += 1,
            Err(msg) => {
                report.failed += 1;
                if report.first_failure.is_none() {
                    report.first_failure = Some(format!("{}: {msg}", label(item)));
                }
            }
        }
    }
    report
}

fn check_euler(p: &ModuliParams) -> Check {
    let chi = moduli::euler_characteristic(p).map_err(|e| e.to_string())?;
    let m = p.dimension();
    let g = p.genus() as i64;
    let vanishes = m > 2 * g - 2;
    ensure(chi.is_zero() == vanishes, || {
        format!("χ = {chi} at dimension {m}")
    })
}

fn check_betti(p: &ModuliParams) -> Check {
    let betti = moduli::betti_table(p).map_err(|e| e.to_string())?;
    let chi = moduli::euler_characteristic(p).map_err(|e| e.to_string())?;
    ensure(betti.satisfies_duality(), || {
        "Poincaré duality fails".into()
    })?;
    ensure(betti.is_nonnegative(), || "negative Betti number".into())?;
    ensure(betti.alternating_sum() == chi, || {
        format!("Σ(-1)^r b_r = {} but χ = {chi}", betti.alternating_sum())
    })?;
    let n_g = pow_int(p.rank() as i64, p.genus());
    match p.dimension() {
        0 => ensure(betti.get(0) == n_g, || {
            format!("b_0 = {} but N^g = {n_g}", betti.get(0))
        }),
        1 => {
            let genus = &n_g * (p.genus() as i64 - 1) + 1;
            ensure(betti.get(1) == &genus * 2, || {
                format!("b_1 = {} but the curve has genus {genus}", betti.get(1))
            })
        }
        _ => Ok(()),
    }
}

fn check_hodge(p: &ModuliParams) -> Check {
    let table = moduli::hodge_table(p).map_err(|e| e.to_string())?;
    let betti = moduli::betti_table(p).map_err(|e| e.to_string())?;
    ensure(table.is_symmetric(), || "h^{p,q} != h^{q,p}".into())?;
    ensure(table.satisfies_serre_duality(), || {
        "h^{p,q} != h^{m-p,m-q}".into()
    })?;
    ensure(table.degree_sums() == betti.values(), || {
        format!(
            "Hodge sums {:?} differ from Betti numbers",
            table.degree_sums()
        )
    })
}

fn check_km(p: &ModuliParams) -> Check {
    chern_index(p).map(|_| ()).map_err(|e| e.to_string())
}

fn check_macdonald(&(g, n): &(u32, u32)) -> Check {
    let p = ModuliParams::new(g, 1, 0, n as i64).map_err(|e| e.to_string())?;
    let betti = moduli::betti_table(&p).map_err(|e| e.to_string())?;
    let oracle = moduli::macdonald_oracle(g, n);
    ensure(betti.values() == oracle, || {
        format!("{:?} != {oracle:?}", betti.values())
    })
}

/// `p_*(ξ^{R+K-1+r})` by Leray-Hirsch reduction against `N^r Θ^r / r!`, and
/// invariance of the integrals under `K -> K + 3`.
fn check_pushforward(p: &ModuliParams) -> Check {
    let bundle = ProjectiveBundle::from_params(p).map_err(|e| e.to_string())?;
    let fiber = bundle.fiber_rank() - 1;
    for r in 0..=p.genus() as u64 {
        let reduced = bundle.xi_power(fiber + r).pushforward_by_reduction();
        let closed = bundle.pushforward_xi(fiber + r);
        ensure(reduced == closed, || {
            format!("p_*(ξ^(n-1+{r})) differs between routes")
        })?;
        let expected = Rational::new(pow_int(p.rank() as i64, r as u32), factorial(r));
        ensure(closed[r as usize] == expected, || {
            format!("p_*(ξ^(n-1+{r})) != N^r/r! Θ^r")
        })?;
    }
    let shifted = p
        .with_stabilization(p.stabilization() + 3)
        .map_err(|e| e.to_string())?;
    let chi = moduli::euler_integral(p).map_err(|e| e.to_string())?;
    let chi_shifted = moduli::euler_integral(&shifted).map_err(|e| e.to_string())?;
    ensure(chi == chi_shifted, || {
        format!("∫ ξ^K c_m changes under K -> K+3: {chi} vs {chi_shifted}")
    })?;
    let fl = moduli::fl_bound(p).map_err(|e| e.to_string())?;
    let fl_shifted = moduli::fl_bound(&shifted).map_err(|e| e.to_string())?;
    ensure(fl == fl_shifted, || {
        "Fulton-Lazarsfeld bound changes under K -> K+3".into()
    })?;
    if HodgeLimits::default().allows(p) && p.dimension() <= 4 {
        let a = moduli::holomorphic_euler_characteristics(p).map_err(|e| e.to_string())?;
        let b = moduli::holomorphic_euler_characteristics(&shifted).map_err(|e| e.to_string())?;
        ensure(a == b, || {
            format!("χ(Ω^p) changes under K -> K+3: {a:?} vs {b:?}")
        })?;
    }
    Ok(())
}

fn check_spectral(p: &ModuliParams) -> Check {
    let fl = moduli::fl_bound(p).map_err(|e| e.to_string())?;
    ensure(fl == p.dimension(), || {
        format!("fl_bound {fl} != dimension {}", p.dimension())
    })?;
    let s = moduli::spectral_numerology(p);
    ensure(s.dim_consistency, || {
        format!("δ + Nd - (g_Y - g) != m for {s:?}")
    })?;
    if p.rank() == 1 {
        ensure(
            s.delta == p.deg_e() && s.genus_y == p.genus() as i64,
            || "N = 1 spectral cover is not trivial".into(),
        )?;
    }
    Ok(())
}

/// Runs one suite over the grid.
pub fn run_suite(suite: Suite, bounds: &GridBounds) -> SuiteReport {
    let grid = bounds.points();
    match suite {
        Suite::Euler => run_grid(suite, grid, describe, check_euler),
        Suite::Betti => run_grid(suite, grid, describe, check_betti),
        Suite::Hodge => {
            let points = grid
                .into_iter()
                .filter(|p| p.genus() <= 3 && p.dimension() <= 6)
                .collect();
            run_grid(suite, points, describe, check_hodge)
        }
        Suite::Km => {
            // the index classes only see (g, N, D); d is fixed
            let mut points = Vec::new();
            for g in 1..=bounds.max_genus.min(3) {
                for n in 1..=bounds.max_rank {
                    for dd in DEG_E_RANGE {
                        points.push(
                            ModuliParams::new(g, n, dd, 1).expect("grid parameters are valid"),
                        );
                    }
                }
            }
            run_grid(suite, points, describe, check_km)
        }
        Suite::Macdonald => {
            let max_n = bounds.max_dim.clamp(0, 8) as u32;
            let points: Vec<(u32, u32)> = (1..=bounds.max_genus)
                .flat_map(|g| (0..=max_n).map(move |n| (g, n)))
                .collect();
            run_grid(
                suite,
                points,
                |(g, n)| format!("(g={g}, N=1, d+D={n})"),
                check_macdonald,
            )
        }
        Suite::Pushforward => run_grid(suite, grid, describe, check_pushforward),
        Suite::Spectral => run_grid(suite, grid, describe, check_spectral),
    }
}

/// Runs the suites in the given order.
pub fn run_suites(suites: &[Suite], bounds: &GridBounds) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, bounds)).collect()
}
