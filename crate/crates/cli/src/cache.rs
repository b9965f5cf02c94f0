//! Content-addressed disk cache for commutant bases.

use std::io::Write;
use std::path::{Path, PathBuf};

use cftkit_core::modinv::{commutant_basis, CommutantBasis};
use cftkit_core::{ModularData, TheoryId, ARTIFACT_VERSION};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

/// File name derived from the theory parameters and the artifact version.
pub fn cache_key(theory: &TheoryId) -> String {
    let params = match theory {
        TheoryId::Sl2 { level } => format!("sl2\nlevel={level}"),
        TheoryId::Minimal { m } => format!("minimal\nm={m}"),
    };
    let mut h = Sha256::new();
    h.update(params.as_bytes());
    h.update(b"\n");
    h.update(ARTIFACT_VERSION.as_bytes());
    format!("commutant-{}.json", hex::encode(h.finalize()))
}

fn load(path: &Path, theory: &TheoryId) -> Option<CommutantBasis> {
    let text = std::fs::read(path).ok()?;
    let basis: CommutantBasis = serde_json::from_slice(&text).ok()?;
    (basis.theory == *theory).then_some(basis)
}

fn store(dir: &Path, path: &Path, basis: &CommutantBasis) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, basis)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// The commutant basis, read from `dir` when present and written there otherwise.
pub fn commutant_cached(data: &ModularData, dir: Option<&Path>) -> (CommutantBasis, CacheStatus) {
    let Some(dir) = dir else {
        return (commutant_basis(data), CacheStatus::Disabled);
    };
    let path: PathBuf = dir.join(cache_key(&data.theory));
    if let Some(basis) = load(&path, &data.theory) {
        return (basis, CacheStatus::Hit);
    }
    let basis = commutant_basis(data);
    if let Err(e) = store(dir, &path, &basis) {
        eprintln!("warning: cannot write cache {}: {e}", path.display());
    }
    (basis, CacheStatus::Miss)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_differ_by_theory() {
        let a = cache_key(&TheoryId::Sl2 { level: 10 });
        let b = cache_key(&TheoryId::Minimal { m: 10 });
        assert_ne!(a, b);
        assert_eq!(a, cache_key(&TheoryId::Sl2 { level: 10 }));
        assert!(a.starts_with("commutant-") && a.ends_with(".json"));
    }
}
