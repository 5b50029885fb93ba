//! Tables of `H(n,m) = λ(Tor_i(M/I^n M, N/J^m N))` and related lengths.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::tor_length;
use crate::ideal::Ideal;
use crate::length::Length;
use crate::module::FPModule;

/// Inclusive ranges of `n` and `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranges {
    pub n_lo: u32,
    pub n_hi: u32,
    pub m_lo: u32,
    pub m_hi: u32,
}

impl Ranges {
    pub fn new(n: (u32, u32), m: (u32, u32)) -> Result<Ranges> {
        if n.0 > n.1 || m.0 > m.1 {
            return Err(Error::InvalidArgument(format!("empty range n={}..{} m={}..{}", n.0, n.1, m.0, m.1)));
        }
        Ok(Ranges { n_lo: n.0, n_hi: n.1, m_lo: m.0, m_hi: m.1 })
    }

    pub fn square(lo: u32, hi: u32) -> Ranges {
        Ranges { n_lo: lo, n_hi: hi, m_lo: lo, m_hi: hi }
    }

    fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for n in self.n_lo..=self.n_hi {
            for m in self.m_lo..=self.m_hi {
                out.push((n, m));
            }
        }
        out
    }
}

/// Exact lengths on a rectangular grid; `values[n - n_lo][m - m_lo]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleTable {
    pub i: usize,
    pub ranges: Ranges,
    pub values: Vec<Vec<Length>>,
}

impl SampleTable {
    /// Evaluates `f` on every cell, in parallel when asked; the assembly
    /// order never depends on scheduling.
    pub fn tabulate(i: usize, ranges: Ranges, parallel: bool, f: impl Fn(u32, u32) -> Length + Sync) -> SampleTable {
        let cells = ranges.cells();
        let flat: Vec<Length> = if parallel {
            cells.par_iter().map(|&(n, m)| f(n, m)).collect()
        } else {
            cells.iter().map(|&(n, m)| f(n, m)).collect()
        };
        let width = (ranges.m_hi - ranges.m_lo + 1) as usize;
        let values = flat.chunks(width).map(<[Length]>::to_vec).collect();
        SampleTable { i, ranges, values }
    }

    pub fn get(&self, n: i64, m: i64) -> Option<Length> {
        let r = &self.ranges;
        if n < r.n_lo as i64 || n > r.n_hi as i64 || m < r.m_lo as i64 || m > r.m_hi as i64 {
            return None;
        }
        Some(self.values[(n - r.n_lo as i64) as usize][(m - r.m_lo as i64) as usize])
    }

    pub fn has_infinite(&self) -> bool {
        self.values.iter().flatten().any(|v| !v.is_finite())
    }

    /// Header row of `m` values, first column `n`, infinite cells as `INF`.
    pub fn to_csv(&self) -> String {
        let r = &self.ranges;
        let mut s = String::from("n\\m");
        for m in r.m_lo..=r.m_hi {
            let _ = write!(s, ",{m}");
        }
        s.push('\n');
        for (k, row) in self.values.iter().enumerate() {
            let _ = write!(s, "{}", r.n_lo + k as u32);
            for v in row {
                let _ = write!(s, ",{v}");
            }
            s.push('\n');
        }
        s
    }
}

/// Values `H(n)` for consecutive `n` starting at `n_lo`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    pub i: usize,
    pub n_lo: u32,
    pub values: Vec<Length>,
}

impl Series {
    pub fn new(i: usize, n_lo: u32, values: Vec<Length>) -> Series {
        Series { i, n_lo, values }
    }

    pub fn get(&self, n: i64) -> Option<Length> {
        if n < self.n_lo as i64 {
            return None;
        }
        self.values.get((n - self.n_lo as i64) as usize).copied()
    }

    pub fn n_hi(&self) -> u32 {
        self.n_lo + self.values.len() as u32 - 1
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,value\n");
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{},{v}", self.n_lo + k as u32);
        }
        s
    }
}

/// `H(n,m) = λ(Tor_i(M/I^n M, N/J^m N))`.
pub fn hilbert_value(i: i64, m: &FPModule, n: &FPModule, ii: &Ideal, jj: &Ideal, pn: u32, pm: u32) -> Length {
    tor_length(i, &m.quotient_by_power(ii, pn), &n.quotient_by_power(jj, pm))
}

pub fn sample_grid(
    i: usize,
    m: &FPModule,
    n: &FPModule,
    ii: &Ideal,
    jj: &Ideal,
    ranges: Ranges,
    parallel: bool,
) -> SampleTable {
    SampleTable::tabulate(i, ranges, parallel, |pn, pm| hilbert_value(i as i64, m, n, ii, jj, pn, pm))
}

/// `H(n,n)` with `J = I`.
pub fn sample_diagonal(i: usize, m: &FPModule, n: &FPModule, ii: &Ideal, range: (u32, u32), parallel: bool) -> Series {
    let ns: Vec<u32> = (range.0..=range.1).collect();
    let f = |k: &u32| hilbert_value(i as i64, m, n, ii, ii, *k, *k);
    let values = if parallel { ns.par_iter().map(f).collect() } else { ns.iter().map(f).collect() };
    Series::new(i, range.0, values)
}

/// `λ(Tor_i(I^n M, N/J^m N))`.
pub fn sample_mixed(
    i: usize,
    m: &FPModule,
    n: &FPModule,
    ii: &Ideal,
    jj: &Ideal,
    ranges: Ranges,
    parallel: bool,
) -> SampleTable {
    SampleTable::tabulate(i, ranges, parallel, |pn, pm| {
        let scaled = m.scale(ii, pn).presentation();
        tor_length(i as i64, &scaled, &n.quotient_by_power(jj, pm))
    })
}

/// `λ(Tor_i(M/I^n M, J^m N))`.
pub fn sample_quotient_scaled(
    i: usize,
    m: &FPModule,
    n: &FPModule,
    ii: &Ideal,
    jj: &Ideal,
    ranges: Ranges,
    parallel: bool,
) -> SampleTable {
    SampleTable::tabulate(i, ranges, parallel, |pn, pm| {
        let scaled = n.scale(jj, pm).presentation();
        tor_length(i as i64, &m.quotient_by_power(ii, pn), &scaled)
    })
}
