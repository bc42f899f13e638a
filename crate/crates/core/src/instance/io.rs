use serde::{Deserialize, Serialize};

use super::Instance;
use crate::error::{Error, Position, Result};
use crate::Cost;

/// On-disk shape of the native format. Field names are part of the file contract.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct InstanceFile {
    name: String,
    n: usize,
    cost: Vec<Vec<Cost>>,
}

impl TryFrom<InstanceFile> for Instance {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Self> {
        Instance::with_dimension(file.name, file.n, file.cost)
    }
}

impl From<Instance> for InstanceFile {
    fn from(inst: Instance) -> Self {
        InstanceFile {
            cost: inst.matrix(),
            n: inst.n,
            name: inst.name,
        }
    }
}

pub(super) fn from_json(text: &str) -> Result<Instance> {
    // Parse to the file shape first so validation errors keep their own variants.
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        at: Position {
            line: e.line(),
            column: e.column(),
        },
        message: e.to_string(),
    })?;
    Instance::try_from(file)
}

pub(super) fn position_of(bytes: &[u8], offset: usize) -> Position {
    let before = &bytes[..offset.min(bytes.len())];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
    Position { line, column }
}
