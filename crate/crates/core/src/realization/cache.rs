//! On-disk cache of constant tables. Every load is re-certified: the
//! structure constants against the vector fields, the generalized table
//! against a refold of the structure constants.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{refold_generalized_constants, verify_structure_constants, SparseVec};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_num_den, MultiIndex, PolyVectorField};
use crate::hall::HallBasis;

pub const CACHE_FORMAT_VERSION: u32 = 1;
/// Identifies the within-degree ordering of the Hall basis.
pub const ORDERING_KEY: &str = "d(j),i,j/1";
/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "EXTREMAL_LAB_CACHE_DIR";

pub fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GscEntry {
    pub i: usize,
    pub alpha: Vec<u16>,
    pub k: usize,
    pub num: String,
    pub den: String,
}

/// Serialized tables; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub ordering_key: String,
    pub r: usize,
    pub s: usize,
    pub n: usize,
    pub sc: Vec<ScEntry>,
    pub gsc: Vec<GscEntry>,
}

pub fn cache_path(dir: &Path, r: usize, s: usize) -> PathBuf {
    dir.join(format!("free-r{r}-s{s}-v{CACHE_FORMAT_VERSION}.json"))
}

fn split(q: &crate::exact::Rational) -> (String, String) {
    let f = format_rational(q);
    match f.split_once('/') {
        Some((a, b)) => (a.to_string(), b.to_string()),
        None => (f, "1".to_string()),
    }
}

impl CacheFile {
    pub fn from_tables(basis: &HallBasis, sc: &[Vec<SparseVec>], gsc: &[BTreeMap<MultiIndex, SparseVec>]) -> Self {
        let mut sc_entries = Vec::new();
        for (i, row) in sc.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (&k, c) in v {
                    let (num, den) = split(c);
                    sc_entries.push(ScEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        num,
                        den,
                    });
                }
            }
        }
        let mut gsc_entries = Vec::new();
        for (i, table) in gsc.iter().enumerate() {
            for (alpha, v) in table {
                for (&k, c) in v {
                    let (num, den) = split(c);
                    gsc_entries.push(GscEntry {
                        i: i + 1,
                        alpha: alpha.exponents().to_vec(),
                        k: k + 1,
                        num,
                        den,
                    });
                }
            }
        }
        CacheFile {
            format_version: CACHE_FORMAT_VERSION,
            ordering_key: ORDERING_KEY.to_string(),
            r: basis.rank(),
            s: basis.step(),
            n: basis.dim(),
            sc: sc_entries,
            gsc: gsc_entries,
        }
    }

    /// Rebuilds and certifies the tables.
    #[allow(clippy::type_complexity)]
    pub fn into_tables(
        self,
        basis: &HallBasis,
        fields: &[PolyVectorField],
    ) -> std::result::Result<(Vec<Vec<SparseVec>>, Vec<BTreeMap<MultiIndex, SparseVec>>), String> {
        if self.format_version != CACHE_FORMAT_VERSION {
            return Err(format!(
                "format version {} (expected {CACHE_FORMAT_VERSION})",
                self.format_version
            ));
        }
        if self.ordering_key != ORDERING_KEY {
            return Err(format!(
                "ordering key {:?} (expected {ORDERING_KEY:?})",
                self.ordering_key
            ));
        }
        if (self.r, self.s, self.n) != (basis.rank(), basis.step(), basis.dim()) {
            return Err(format!("header describes r={} s={} n={}", self.r, self.s, self.n));
        }
        let n = basis.dim();
        let in_range = |x: usize| (1..=n).contains(&x);
        let mut sc = vec![vec![SparseVec::new(); n]; n];
        for e in self.sc {
            if !(in_range(e.i) && in_range(e.j) && in_range(e.k)) {
                return Err(format!(
                    "structure constant index out of range: ({}, {}, {})",
                    e.i, e.j, e.k
                ));
            }
            let c = parse_num_den(&e.num, &e.den).map_err(|err| err.to_string())?;
            sc[e.i - 1][e.j - 1].insert(e.k - 1, c);
        }
        verify_structure_constants(fields, &sc).map_err(|e| e.to_string())?;

        let expected = refold_generalized_constants(basis, &sc);
        let mut gsc: Vec<BTreeMap<MultiIndex, SparseVec>> = expected
            .iter()
            .map(|t| t.keys().map(|a| (a.clone(), SparseVec::new())).collect())
            .collect();
        for e in self.gsc {
            if !(in_range(e.i) && in_range(e.k)) || e.alpha.len() != n {
                return Err(format!("generalized constant entry out of range for X{}", e.i));
            }
            let alpha = MultiIndex::from_exponents(e.alpha);
            let c = parse_num_den(&e.num, &e.den).map_err(|err| err.to_string())?;
            match gsc[e.i - 1].get_mut(&alpha) {
                Some(v) => {
                    v.insert(e.k - 1, c);
                }
                None => {
                    return Err(format!(
                        "generalized constant for X{} at alpha = {alpha} is outside the table",
                        e.i
                    ))
                }
            }
        }
        for (i, (got, want)) in gsc.iter().zip(&expected).enumerate() {
            for (alpha, c) in want {
                if got.get(alpha) != Some(c) {
                    return Err(format!(
                        "generalized constants of X{} at alpha = {alpha} disagree with the structure constants",
                        i + 1
                    ));
                }
            }
        }
        Ok((sc, gsc))
    }
}

#[allow(clippy::type_complexity)]
pub(crate) fn load(
    dir: &Path,
    basis: &HallBasis,
    fields: &[PolyVectorField],
) -> Result<Option<(Vec<Vec<SparseVec>>, Vec<BTreeMap<MultiIndex, SparseVec>>)>> {
    let path = cache_path(dir, basis.rank(), basis.step());
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let corrupt = |reason: String| Error::CorruptCache {
        path: path.display().to_string(),
        reason,
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    file.into_tables(basis, fields).map(Some).map_err(corrupt)
}

pub(crate) fn store(
    dir: &Path,
    basis: &HallBasis,
    sc: &[Vec<SparseVec>],
    gsc: &[BTreeMap<MultiIndex, SparseVec>],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, basis.rank(), basis.step());
    let tmp = path.with_extension("json.tmp");
    let file = CacheFile::from_tables(basis, sc, gsc);
    fs::write(&tmp, serde_json::to_string(&file)?)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}
