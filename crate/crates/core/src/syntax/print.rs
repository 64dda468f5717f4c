//! Canonical rendering of processes.

use std::fmt;

use crate::action::format_action_list;

use super::Process;

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Choice,
    Par,
    Pre,
}

fn level(p: &Process) -> Level {
    match p {
        Process::Choice(..) => Level::Choice,
        Process::Parallel(..) => Level::Par,
        _ => Level::Pre,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, p: &Process, min: Level) -> fmt::Result {
    if level(p) < min {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Nil => f.write_str("0"),
            Process::Prefix { action, executed, decoration, cont } => {
                write!(f, "{action}")?;
                if *executed {
                    f.write_str("!")?;
                    if let Some(xi) = decoration {
                        write!(f, "{xi}")?;
                    }
                }
                f.write_str(".")?;
                write_at(f, cont, Level::Pre)
            }
            Process::Choice(l, r) => {
                write_at(f, l, Level::Choice)?;
                f.write_str(" + ")?;
                write_at(f, r, Level::Par)
            }
            Process::Parallel(l, r, s) => {
                write_at(f, l, Level::Par)?;
                write!(f, " |[{}]| ", format_action_list(s))?;
                write_at(f, r, Level::Pre)
            }
        }
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text of `p`.
pub fn print_process(p: &Process) -> String {
    p.to_string()
}
