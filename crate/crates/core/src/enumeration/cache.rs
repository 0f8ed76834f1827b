//! On-disk JSON cache of graded bases, keyed by grade and format version.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{EnumerationError, GradedBasis};
use crate::canon::canonicalize;
use crate::chain::Grade;
use crate::graph::Orientation;
use crate::json::GraphJson;

/// Bumped whenever the canonical form or file layout changes.
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct BasisFile {
    format_version: u32,
    grade: [usize; 3],
    graphs: Vec<GraphJson>,
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    fn path(&self, grade: Grade) -> PathBuf {
        self.dir.join(format!(
            "basis-v{CACHE_FORMAT_VERSION}-g{}-m{}-k{}.json",
            grade.genus, grade.punctures, grade.vertices
        ))
    }

    /// `Ok(None)` on a miss or a stale file.
    pub fn load(&self, grade: Grade) -> Result<Option<GradedBasis>, EnumerationError> {
        let path = self.path(grade);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(EnumerationError::Cache(format!("{}: {e}", path.display()))),
        };
        let file: BasisFile = serde_json::from_str(&text).map_err(|e| EnumerationError::Cache(format!("{}: {e}", path.display())))?;
        if file.format_version != CACHE_FORMAT_VERSION || file.grade != [grade.genus, grade.punctures, grade.vertices] {
            return Ok(None);
        }
        let mut graphs = Vec::with_capacity(file.graphs.len());
        for entry in &file.graphs {
            let (g, _) = entry.to_graph().map_err(|e| EnumerationError::Cache(e.to_string()))?;
            let (canon, _) = canonicalize(&g, &Orientation::standard(&g));
            if canon.is_zero() || canon.graph() != &g || Grade::of(&g).ok() != Some(grade) {
                return Err(EnumerationError::Cache(format!("{}: entry is not a canonical basis graph", path.display())));
            }
            graphs.push(canon);
        }
        if graphs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(EnumerationError::Cache(format!("{}: entries out of order", path.display())));
        }
        Ok(Some(GradedBasis { grade, graphs }))
    }

    pub fn store(&self, basis: &GradedBasis) -> Result<(), EnumerationError> {
        let g = basis.grade;
        let file = BasisFile {
            format_version: CACHE_FORMAT_VERSION,
            grade: [g.genus, g.punctures, g.vertices],
            graphs: basis.graphs.iter().map(|c| GraphJson::from_graph(c.graph(), None)).collect(),
        };
        fs::create_dir_all(&self.dir).map_err(|e| EnumerationError::Cache(format!("{}: {e}", self.dir.display())))?;
        let path = self.path(g);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&file).expect("basis serializes");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, &path))
            .map_err(|e| EnumerationError::Cache(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::super::Enumerator;

    #[test]
    fn cached_bases_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = Enumerator::default().basis(1, 3, 3).unwrap();
        let mut writer = Enumerator::default().with_cache(dir.path());
        assert_eq!(writer.basis(1, 3, 3).unwrap(), fresh);
        // the reader must not enumerate anything
        let mut reader = Enumerator::new(usize::MAX).with_cache(dir.path());
        assert_eq!(reader.basis(1, 3, 3).unwrap(), fresh);
        assert!(reader.families.is_empty());
    }
}
