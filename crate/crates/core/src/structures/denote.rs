use crate::error::StructureError;
use crate::semantics::history_configuration;
use crate::syntax::Process;

use super::{scs_choice, scs_nil, scs_parallel, scs_prefix, ConfigStructure, EventId};

/// A structure together with the configuration a process occupies in it.
#[derive(Clone, Debug)]
pub struct Denotation {
    pub structure: ConfigStructure,
    pub cursor: usize,
}

/// The structure of the initial version of `p`.
pub fn denote_initial(p: &Process) -> Result<ConfigStructure, StructureError> {
    match p {
        Process::Nil => Ok(scs_nil()),
        Process::Prefix { action, cont, .. } => scs_prefix(action, &denote_initial(cont)?),
        Process::Choice(l, r) => scs_choice(&denote_initial(l)?, &denote_initial(r)?),
        Process::Parallel(l, r, s) => scs_parallel(&denote_initial(l)?, &denote_initial(r)?, s),
    }
}

pub fn denote(p: &Process) -> Result<Denotation, StructureError> {
    let structure = denote_initial(&p.to_initial())?;
    let history = history_configuration(p)?;
    let events = history
        .into_iter()
        .map(|t| structure.event_by_id(&EventId::Term(t)).ok_or(StructureError::CursorNotConfiguration))
        .collect::<Result<Vec<_>, _>>()?;
    let cursor = structure.find_config(&events).ok_or(StructureError::CursorNotConfiguration)?;
    Ok(Denotation { structure, cursor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::validate_stable;
    use crate::syntax::parse_process;

    fn d(s: &str) -> Denotation {
        denote(&parse_process(s).unwrap()).unwrap()
    }

    #[test]
    fn denotation_shapes() {
        let conc = d("a.0 |[]| a.0");
        assert_eq!((conc.structure.event_count(), conc.structure.config_count()), (2, 4));
        assert!(conc.structure.config(conc.cursor).is_empty());
        let caus = d("a.a.0");
        assert_eq!((caus.structure.event_count(), caus.structure.config_count()), (2, 3));
        let moved = d("a!.a.0");
        assert_eq!(moved.structure.config_count(), 3);
        assert_eq!(moved.structure.format_config(moved.cursor), "{a}");
        assert!(validate_stable(&d("(a.0 + b.0) |[a]| (a.c.0 |[]| a.0)").structure).is_stable());
    }

    #[test]
    fn unreachable_cursor_rejected() {
        // the decoration claims a synchronization that never happened
        let p = parse_process("a!<a,a>[a].0 |[a]| a.0").unwrap();
        assert!(denote(&p).is_err());
    }
}
