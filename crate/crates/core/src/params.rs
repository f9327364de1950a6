use serde::{Deserialize, Serialize};

use crate::combinatorics::ceil_div;
use crate::error::{Error, Result};

/// The discrete data `(g, N, D, d)` of a moduli space, plus the auxiliary
/// stabilization count `K` used when the index bundle is presented as
/// `[U] - [C^K]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuliParams {
    genus: u32,
    rank: u32,
    deg_e: i64,
    deg_l: i64,
    stabilization: i64,
}

impl ModuliParams {
    /// Genus `g >= 1`, rank `N >= 1`, `deg E = D`, `deg L = d`, with the default `K`.
    pub fn new(genus: u32, rank: u32, deg_e: i64, deg_l: i64) -> Result<Self> {
        if genus < 1 {
            return Err(Error::invalid("genus must be at least 1"));
        }
        if rank < 1 {
            return Err(Error::invalid("rank N must be at least 1"));
        }
        let mut p = ModuliParams {
            genus,
            rank,
            deg_e,
            deg_l,
            stabilization: 0,
        };
        p.stabilization = p.default_stabilization();
        Ok(p)
    }

    /// Replaces `K`. It must keep `W` of positive rank (`NK - R >= 1`) and `U`
    /// of rank at least `g` (`R + K >= g`) so its Chern classes are those of the index.
    pub fn with_stabilization(mut self, k: i64) -> Result<Self> {
        let r = self.index_rank();
        let n = self.rank as i64;
        if k < 1 {
            return Err(Error::invalid(format!("K = {k} must be positive")));
        }
        if n * k - r < 1 {
            return Err(Error::invalid(format!(
                "K = {k} leaves W of rank NK - R = {} <= 0",
                n * k - r
            )));
        }
        if r + k < self.genus as i64 {
            return Err(Error::invalid(format!(
                "K = {k} gives U rank R + K = {} below the genus {}",
                r + k,
                self.genus
            )));
        }
        self.stabilization = k;
        Ok(self)
    }

    /// `max(1, ceil((R + g + 1)/N) + 1, g - R)`.
    pub fn default_stabilization(&self) -> i64 {
        let r = self.index_rank();
        let g = self.genus as i64;
        let n = self.rank as i64;
        1.max(ceil_div(r + g + 1, n) + 1).max(g - r)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// `N`, the rank of `E`.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `D = deg E`.
    pub fn deg_e(&self) -> i64 {
        self.deg_e
    }

    /// `d = deg L`.
    pub fn deg_l(&self) -> i64 {
        self.deg_l
    }

    /// `K`.
    pub fn stabilization(&self) -> i64 {
        self.stabilization
    }

    /// `R = N(d + 1 - g) + D`, the index of the Dolbeault operator on `L ⊗ E`.
    pub fn index_rank(&self) -> i64 {
        self.rank as i64 * (self.deg_l + 1 - self.genus as i64) + self.deg_e
    }

    /// Complex dimension `R + g - 1`.
    pub fn dimension(&self) -> i64 {
        self.index_rank() + self.genus as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.dimension() < 0
    }
}
