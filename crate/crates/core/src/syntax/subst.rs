use std::collections::BTreeMap;

use super::{fresh_name_by, Name, NameSet, Nameless, Process};

/// A simultaneous name-for-name substitution.
pub type Substitution = BTreeMap<Name, Name>;

/// True iff `p` and `q` differ only in the choice of bound names.
pub fn alpha_eq(p: &Process, q: &Process) -> bool {
    Nameless::from_process(p) == Nameless::from_process(q)
}

/// Capture-avoiding simultaneous substitution.
///
/// Entries whose key is not free in `p` have no effect. A binder is renamed
/// (to the first free `n<i>`) only when it would capture a name introduced
/// by the substitution.
pub fn substitute(p: &Process, subst: &Substitution) -> Process {
    let fv = p.free_names();
    let live: Substitution = subst
        .iter()
        .filter(|(k, v)| fv.contains(*k) && k != v)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if live.is_empty() {
        return p.clone();
    }
    go(p, &live)
}

fn apply(n: &Name, s: &Substitution) -> Name {
    s.get(n).cloned().unwrap_or_else(|| n.clone())
}

/// `s` is non-empty and only maps names free in `p`.
fn go(p: &Process, s: &Substitution) -> Process {
    match p {
        Process::Stop => Process::Stop,
        Process::Output { subject, args } => Process::output(
            apply(subject, s),
            args.iter().map(|a| apply(a, s)).collect(),
        ),
        Process::Par { left, right } => Process::par(under(left, s), under(right, s)),
        Process::New { binder, body } => {
            let (binders, body) = rebind(std::slice::from_ref(binder), body, s);
            Process::new_scope(binders.into_iter().next().unwrap(), body)
        }
        Process::Input {
            subject,
            params,
            body,
        } => {
            let subject = apply(subject, s);
            let (params, body) = rebind(params, body, s);
            Process::input(subject, params, body)
        }
    }
}

/// Restricts `s` to the free names of `p` and recurses.
fn under(p: &Process, s: &Substitution) -> Process {
    let fv = p.free_names();
    let live: Substitution = s
        .iter()
        .filter(|(k, _)| fv.contains(*k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if live.is_empty() {
        p.clone()
    } else {
        go(p, &live)
    }
}

/// Pushes `s` under `binders`, renaming any binder that would capture.
fn rebind(binders: &[Name], body: &Process, s: &Substitution) -> (Vec<Name>, Process) {
    let mut inner: Substitution = s
        .iter()
        .filter(|(k, _)| !binders.contains(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let body_fv = body.free_names();
    inner.retain(|k, _| body_fv.contains(k));
    if inner.is_empty() {
        return (binders.to_vec(), body.clone());
    }
    let incoming: NameSet = inner.values().cloned().collect();
    let mut avoid: NameSet = body_fv.clone();
    avoid.extend(incoming.iter().cloned());
    avoid.extend(inner.keys().cloned());
    avoid.extend(binders.iter().cloned());
    let mut renamed = Vec::with_capacity(binders.len());
    for b in binders {
        if incoming.contains(b) {
            let fresh = fresh_name_by(|n| avoid.contains(n));
            avoid.insert(fresh.clone());
            inner.insert(b.clone(), fresh.clone());
            renamed.push(fresh);
        } else {
            renamed.push(b.clone());
        }
    }
    (renamed, under(body, &inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{name, parse};

    fn sub(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|(k, v)| (name(k), name(v))).collect()
    }

    #[test]
    fn comm_instance() {
        let p = parse("y!()").unwrap();
        assert_eq!(substitute(&p, &sub(&[("y", "u")])), parse("u!()").unwrap());
    }

    #[test]
    fn binder_renamed_on_capture() {
        let p = parse("(new u) y!(u)").unwrap();
        let r = substitute(&p, &sub(&[("y", "u")]));
        assert!(alpha_eq(&r, &parse("(new w) u!(w)").unwrap()), "{r}");
        assert!(!alpha_eq(&r, &parse("(new u) u!(u)").unwrap()));
    }

    #[test]
    fn stop_is_untouched() {
        assert_eq!(
            substitute(&Process::Stop, &sub(&[("a", "b")])),
            Process::Stop
        );
    }

    #[test]
    fn bound_names_are_not_substituted() {
        let p = parse("x?(y) => y!()").unwrap();
        assert_eq!(substitute(&p, &sub(&[("y", "z")])), p);
        let q = parse("x?(y) => y!(x)").unwrap();
        assert_eq!(
            substitute(&q, &sub(&[("x", "k")])),
            parse("k?(y) => y!(k)").unwrap()
        );
    }

    #[test]
    fn simultaneous_swap() {
        let p = parse("a!(b) | b!(a)").unwrap();
        let r = substitute(&p, &sub(&[("a", "b"), ("b", "a")]));
        assert_eq!(r, parse("b!(a) | a!(b)").unwrap());
    }

    #[test]
    fn input_params_renamed_on_capture() {
        let p = parse("x?(u, v) => y!(u, v)").unwrap();
        let r = substitute(&p, &sub(&[("y", "u")]));
        assert!(alpha_eq(&r, &parse("x?(a, b) => u!(a, b)").unwrap()), "{r}");
    }

    #[test]
    fn alpha_examples() {
        let yy = parse("x?(y) => y!()").unwrap();
        assert!(alpha_eq(&yy, &parse("x?(z) => z!()").unwrap()));
        assert!(!alpha_eq(&yy, &parse("x?(y) => x!()").unwrap()));
        assert!(alpha_eq(
            &parse("(new x) x!()").unwrap(),
            &parse("(new w) w!()").unwrap()
        ));
        // shadowing
        assert!(alpha_eq(
            &parse("(new x)(new x) x!()").unwrap(),
            &parse("(new a)(new b) b!()").unwrap()
        ));
        assert!(!alpha_eq(
            &parse("(new x)(new x) x!()").unwrap(),
            &parse("(new a)(new b) a!()").unwrap()
        ));
    }
}
