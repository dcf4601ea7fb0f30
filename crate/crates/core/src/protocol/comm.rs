use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Publication;

/// `⌈log2 m⌉`, the cost in bits of one bin index.
pub fn bits_per_index(m: usize) -> u32 {
    usize::BITS - m.saturating_sub(1).leading_zeros()
}

/// Per-user upload and download volume in bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommLedger {
    pub upload_bits: Vec<u64>,
    pub download_bits: Vec<u64>,
    pub bits_per_index: u32,
}

impl CommLedger {
    /// Upload is the user's one-bins; viewer `i` downloads every other
    /// publisher's list after central server sampling.
    pub fn grouprr(publication: &Publication) -> Self {
        let bits = bits_per_index(publication.scheme().m());
        let lists = publication.lists();
        let css = publication.css();
        let upload_bits = lists.iter().map(|l| l.len() as u64 * bits as u64).collect();
        let download_bits = (0..lists.len())
            .into_par_iter()
            .map(|i| {
                lists
                    .iter()
                    .filter(|l| l.user != i)
                    .map(|l| css.retained_count(i, l) as u64)
                    .sum::<u64>()
                    * bits as u64
            })
            .collect();
        CommLedger { upload_bits, download_bits, bits_per_index: bits }
    }

    pub fn total_upload(&self) -> u64 {
        self.upload_bits.iter().sum()
    }

    pub fn total_download(&self) -> u64 {
        self.download_bits.iter().sum()
    }

    pub fn mean_upload(&self) -> f64 {
        mean(&self.upload_bits)
    }

    pub fn mean_download(&self) -> f64 {
        mean(&self.download_bits)
    }
}

fn mean(v: &[u64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        v.iter().sum::<u64>() as f64 / v.len() as f64
    }
}
