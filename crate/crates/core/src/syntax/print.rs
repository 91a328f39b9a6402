use std::fmt;

use super::{Name, Process};

fn names(f: &mut fmt::Formatter<'_>, ns: &[Name]) -> fmt::Result {
    f.write_str("(")?;
    for (i, n) in ns.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{n}")?;
    }
    f.write_str(")")
}

fn unary(f: &mut fmt::Formatter<'_>, p: &Process) -> fmt::Result {
    if matches!(p, Process::Par { .. }) {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

/// Prints in the concrete grammar accepted by [`parse`](super::parse); the
/// output re-parses to the same tree.
impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Stop => f.write_str("0"),
            Process::Output { subject, args } => {
                write!(f, "{subject}!")?;
                names(f, args)
            }
            Process::Input {
                subject,
                params,
                body,
            } => {
                write!(f, "{subject}?")?;
                names(f, params)?;
                f.write_str(" => ")?;
                unary(f, body)
            }
            Process::New { binder, body } => {
                write!(f, "(new {binder})")?;
                unary(f, body)
            }
            Process::Par { left, right } => {
                write!(f, "{left} | ")?;
                unary(f, right)
            }
        }
    }
}
