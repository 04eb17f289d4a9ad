use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use ratcurves::toric::Fan;

/// JSON fan description: `{"name", "rays", "max_cones"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub name: String,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanFile {
    /// Parses and checks the file-level invariants: indices in range, no
    /// repeated rays, no repeated index inside a cone.
    pub fn parse(text: &str) -> Result<Self, String> {
        let f: FanFile = serde_json::from_str(text).map_err(|e| format!("malformed fan file: {e}"))?;
        let mut seen = BTreeSet::new();
        for (i, r) in f.rays.iter().enumerate() {
            if !seen.insert(r) {
                return Err(format!("ray {i} {r:?} is listed twice"));
            }
        }
        for (c, cone) in f.max_cones.iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= f.rays.len()) {
                return Err(format!("cone {c} refers to ray {bad}, but there are {} rays", f.rays.len()));
            }
            if cone.iter().collect::<BTreeSet<_>>().len() != cone.len() {
                return Err(format!("cone {c} repeats a ray index"));
            }
        }
        Ok(f)
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        FanFile::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan files serialize")
    }

    pub fn into_fan(self) -> Fan {
        Fan::new(self.name, self.rays, self.max_cones)
    }
}

impl From<&Fan> for FanFile {
    fn from(f: &Fan) -> Self {
        FanFile { name: f.name.clone(), rays: f.rays.clone(), max_cones: f.max_cones.clone() }
    }
}
