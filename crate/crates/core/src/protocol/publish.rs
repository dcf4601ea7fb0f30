use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::privacy::{amplified_epsilon, rr_flip, rr_one_probability, HashScheme, Member};
use crate::rng::{Role, Streams};

/// The bins a user published as 1. Representatives are not recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObfuscatedList {
    pub user: usize,
    pub m: usize,
    pub one_bins: Vec<u32>,
}

impl ObfuscatedList {
    pub fn new(user: usize, m: usize, mut one_bins: Vec<u32>) -> Result<Self> {
        one_bins.sort_unstable();
        one_bins.dedup();
        if let Some(&last) = one_bins.last() {
            if last as usize >= m {
                return Err(Error::invalid(format!("bin {last} outside [0, {m})")));
            }
        }
        Ok(ObfuscatedList { user, m, one_bins })
    }

    pub fn len(&self) -> usize {
        self.one_bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_bins.is_empty()
    }

    pub fn contains(&self, bin: usize) -> bool {
        self.one_bins.binary_search(&(bin as u32)).is_ok()
    }

    /// Little-endian `m`, count, then the sorted bins, all 32-bit.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 4 * self.one_bins.len());
        out.extend_from_slice(&(self.m as u32).to_le_bytes());
        out.extend_from_slice(&(self.one_bins.len() as u32).to_le_bytes());
        for b in &self.one_bins {
            out.extend_from_slice(&b.to_le_bytes());
        }
        out
    }

    /// Decodes one list from the front of `bytes`; returns it with the bytes consumed.
    pub fn from_bytes(user: usize, bytes: &[u8]) -> Result<(Self, usize)> {
        let word = |k: usize| -> Result<u32> {
            bytes
                .get(4 * k..4 * k + 4)
                .map(|w| u32::from_le_bytes(w.try_into().unwrap()))
                .ok_or_else(|| Error::Decode(format!("truncated list for user {user}")))
        };
        let m = word(0)? as usize;
        let count = word(1)? as usize;
        let mut bins = Vec::with_capacity(count);
        for k in 0..count {
            bins.push(word(2 + k)?);
        }
        if bins.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Decode(format!("bins of user {user} not strictly increasing")));
        }
        let list = ObfuscatedList::new(user, m, bins).map_err(|e| Error::Decode(e.to_string()))?;
        Ok((list, 8 + 4 * count))
    }
}

pub fn write_lists(path: impl AsRef<Path>, lists: &[ObfuscatedList]) -> Result<()> {
    let path = path.as_ref();
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for l in lists {
        f.write_all(&l.to_bytes()).map_err(io)?;
    }
    f.flush().map_err(io)
}

pub fn read_lists(path: impl AsRef<Path>) -> Result<Vec<ObfuscatedList>> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let mut lists = Vec::new();
    let mut at = 0;
    while at < bytes.len() {
        let (l, used) = ObfuscatedList::from_bytes(lists.len(), &bytes[at..])?;
        lists.push(l);
        at += used;
    }
    Ok(lists)
}

/// Group randomized response for one user. When `trace` is given, the chosen
/// representative of every group is appended to it.
pub fn group_rr_user<R: Rng + ?Sized>(
    g: &Graph,
    scheme: &HashScheme,
    user: usize,
    eps_prime: f64,
    rng: &mut R,
    mut trace: Option<&mut Vec<Member>>,
) -> ObfuscatedList {
    let s = scheme.s();
    let mut ones = Vec::new();
    for t in 0..scheme.m() {
        let rep = scheme.slot(user, t, rng.gen_range(0..s));
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(rep);
        }
        let bit = match rep {
            Member::Real(c) => c < user && g.has_edge(user, c),
            Member::Dummy => false,
        };
        if rr_flip(bit, eps_prime, rng) {
            ones.push(t as u32);
        }
    }
    ObfuscatedList { user, m: scheme.m(), one_bins: ones }
}

pub fn group_rr_step(g: &Graph, scheme: &HashScheme, eps1: f64, streams: &Streams) -> Vec<ObfuscatedList> {
    let eps_prime = amplified_epsilon(eps1, scheme.s());
    (0..g.n())
        .into_par_iter()
        .map(|i| group_rr_user(g, scheme, i, eps_prime, &mut streams.rng(Role::GroupRr, i as u64), None))
        .collect()
}

/// Expected number of published ones for a user with low degree `d`.
pub fn expected_upload_ones(m: usize, s: usize, eps_prime: f64, d: f64) -> f64 {
    let q = rr_one_probability(false, eps_prime);
    m as f64 * q + d * (1.0 - 2.0 * q) / s as f64
}
