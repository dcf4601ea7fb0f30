use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Numbering convention of the node ids in an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdBase {
    #[default]
    Zero,
    One,
}

/// What the loader dropped while normalizing the input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub lines: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Loads a whitespace-separated edge list (SNAP style, `#` comments).
///
/// Ids are compacted to `0..n` preserving their order, so a file using ids
/// `{3, 10, 42}` yields nodes `{0, 1, 2}`.
pub fn load_edge_list(path: impl AsRef<Path>, base: IdBase) -> Result<(Graph, LoadStats)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(&text, base).map_err(|(line, msg)| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    })
}

/// Parses edge-list text. On failure returns the 1-based line number.
pub fn parse_edge_list(text: &str, base: IdBase) -> Result<(Graph, LoadStats), (usize, String)> {
    let mut stats = LoadStats::default();
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        stats.lines += 1;
        let mut tokens = line.split_whitespace();
        let mut next = || -> Result<u64, (usize, String)> {
            let tok = tokens
                .next()
                .ok_or_else(|| (idx + 1, format!("expected two node ids, got {line:?}")))?;
            let id: u64 = tok
                .parse()
                .map_err(|_| (idx + 1, format!("invalid node id {tok:?}")))?;
            match base {
                IdBase::Zero => Ok(id),
                IdBase::One => id
                    .checked_sub(1)
                    .ok_or_else(|| (idx + 1, "node id 0 in a one-based file".to_string())),
            }
        };
        let u = next()?;
        let v = next()?;
        raw.push((u, v));
    }

    let ids: BTreeSet<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    let ids: Vec<u64> = ids.into_iter().collect();
    let compact = |id: u64| ids.binary_search(&id).expect("id collected above");

    let mut seen = BTreeSet::new();
    let mut pairs = Vec::with_capacity(raw.len());
    for (u, v) in raw {
        if u == v {
            stats.self_loops += 1;
            continue;
        }
        let (a, b) = (compact(u.min(v)), compact(u.max(v)));
        if seen.insert((a, b)) {
            pairs.push((a, b));
        } else {
            stats.duplicates += 1;
        }
    }
    if stats.self_loops > 0 {
        log::warn!("dropped {} self-loop(s)", stats.self_loops);
    }
    Ok((Graph::from_edges(ids.len(), pairs), stats))
}
