//! JSON exchange format for configuration structures.

use serde::{Deserialize, Serialize};

use crate::action::Action;
use crate::error::StructureError;

use super::{ConfigStructure, EventId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventEntry {
    pub id: String,
    pub label: String,
}

/// On-disk shape: events with labels, configurations as id lists, optional cursor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScsFile {
    pub events: Vec<EventEntry>,
    pub configurations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cursor: Option<Vec<String>>,
}

/// Parses a structure and its optional cursor configuration index.
pub fn load_scs(text: &str) -> Result<(ConfigStructure, Option<usize>), StructureError> {
    let file: ScsFile = serde_json::from_str(text).map_err(|e| StructureError::Json(e.to_string()))?;
    let events = file
        .events
        .iter()
        .map(|e| Ok((EventId::Name(e.id.clone()), Action::new(&e.label)?)))
        .collect::<Result<Vec<_>, StructureError>>()?;
    let configs = file.configurations.iter().map(|c| c.iter().map(|id| EventId::Name(id.clone())).collect()).collect();
    let structure = ConfigStructure::new(events, configs)?;
    let cursor = match file.cursor {
        None => None,
        Some(ids) => {
            let evs = ids
                .iter()
                .map(|id| structure.event_by_id(&EventId::Name(id.clone())).ok_or_else(|| StructureError::UnknownEvent(id.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Some(structure.find_config(&evs).ok_or(StructureError::CursorNotConfiguration)?)
        }
    };
    Ok((structure, cursor))
}

/// Serializes with event ids rendered as text (proof terms in printed form).
pub fn save_scs(c: &ConfigStructure, cursor: Option<usize>) -> String {
    let name = |e: u32| c.event(e).to_string();
    let file = ScsFile {
        events: (0..c.event_count() as u32).map(|e| EventEntry { id: name(e), label: c.label(e).to_string() }).collect(),
        configurations: c.configurations().iter().map(|x| x.iter().map(|&e| name(e)).collect()).collect(),
        cursor: cursor.map(|x| c.config(x).iter().map(|&e| name(e)).collect()),
    };
    serde_json::to_string_pretty(&file).expect("structure serializes")
}
