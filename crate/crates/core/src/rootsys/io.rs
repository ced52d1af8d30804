//! Plain-text root files and their companion multiplicity files.
//!
//! Root file: one root per line, `n+2` whitespace- or comma-separated
//! coordinates (`3`, `-1/2`, `1/2*sqrt2`, `1+sqrt2`), `#` starts a comment.
//!
//! Companion file: `orbit.<id> = i,j,…` lines list the root indices of each
//! orbit and `k.<id> = value` lines give the multiplicities. Without orbit
//! lines the ids refer to [`RootSystem::orbits`]. A bare `k = value` sets
//! every orbit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{MultiplicityFunction, Root, RootError, RootSystem};
use crate::scalar::Exact;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn perr(line: usize, msg: impl Into<String>) -> RootError {
    RootError::Parse { line, msg: msg.into() }
}

pub fn parse_roots(text: &str) -> Result<Vec<Root>, RootError> {
    let mut roots = Vec::new();
    let mut width = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Exact>().map_err(|e| perr(ln + 1, format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        match width {
            None => width = Some(coords.len()),
            Some(w) if w != coords.len() => {
                return Err(perr(ln + 1, format!("expected {w} coordinates, got {}", coords.len())));
            }
            _ => {}
        }
        roots.push(Root::new(coords).map_err(|e| perr(ln + 1, e.to_string()))?);
    }
    Ok(roots)
}

pub fn write_roots(sys: &RootSystem) -> String {
    let mut out = format!("# {} in R^{{{},1}}, {} roots\n", sys.name(), sys.n() + 1, sys.len());
    for (i, r) in sys.roots().iter().enumerate() {
        let coords: Vec<String> = r.coords().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{}  # {} orbit {} {}", coords.join(" "), i, sys.orbit_of(i), r.tag());
    }
    out
}

pub fn parse_assignments(sys: &RootSystem, text: &str) -> Result<MultiplicityFunction, RootError> {
    let mut file_orbits: BTreeMap<String, (usize, BTreeSet<usize>)> = BTreeMap::new();
    let mut kvals: BTreeMap<String, (usize, Exact)> = BTreeMap::new();
    let mut uniform = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| perr(ln + 1, "expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "k" {
            uniform = Some(value.parse::<Exact>().map_err(|e| perr(ln + 1, e.to_string()))?);
        } else if let Some(id) = key.strip_prefix("orbit.") {
            let members = value
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| perr(ln + 1, format!("{t:?}: {e}"))))
                .collect::<Result<BTreeSet<_>, _>>()?;
            if let Some(&bad) = members.iter().find(|&&i| i >= sys.len()) {
                return Err(perr(ln + 1, format!("root index {bad} out of range")));
            }
            file_orbits.insert(id.to_string(), (ln + 1, members));
        } else if let Some(id) = key.strip_prefix("k.") {
            let v = value.parse::<Exact>().map_err(|e| perr(ln + 1, e.to_string()))?;
            kvals.insert(id.to_string(), (ln + 1, v));
        } else {
            return Err(perr(ln + 1, format!("unknown key {key:?}")));
        }
    }
    let norbits = sys.orbits().len();
    let mut values: Vec<Option<Exact>> = vec![uniform; norbits];
    for (id, (ln, v)) in kvals {
        let target = if file_orbits.is_empty() {
            id.parse::<usize>().ok().filter(|&o| o < norbits).ok_or_else(|| perr(ln, format!("no orbit {id:?}")))?
        } else {
            let (oln, members) = file_orbits.get(&id).ok_or_else(|| perr(ln, format!("k.{id} has no orbit.{id} line")))?;
            sys.orbits()
                .iter()
                .position(|o| o.iter().copied().collect::<BTreeSet<_>>() == *members)
                .ok_or_else(|| perr(*oln, format!("orbit.{id} is not an orbit of the group")))?
        };
        values[target] = Some(v);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(o, v)| v.ok_or_else(|| perr(0, format!("no multiplicity for orbit {o}"))))
        .collect::<Result<Vec<_>, _>>()?;
    MultiplicityFunction::per_orbit(sys, values)
}

pub fn write_assignments(sys: &RootSystem, k: &MultiplicityFunction) -> String {
    let mut out = String::new();
    for (o, members) in sys.orbits().iter().enumerate() {
        let idx: Vec<String> = members.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "orbit.{o} = {}", idx.join(","));
    }
    for (o, v) in k.values().iter().enumerate() {
        let _ = writeln!(out, "k.{o} = {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_b, validate_root_system};

    #[test]
    fn round_trip() {
        let sys = build_b(2);
        let text = write_roots(&sys);
        let again = validate_root_system(parse_roots(&text).unwrap()).unwrap();
        assert_eq!(again.roots(), sys.roots());
        let k = MultiplicityFunction::per_orbit(&sys, vec![Exact::frac(1, 2), Exact::int(2)]).unwrap();
        let k2 = parse_assignments(&sys, &write_assignments(&sys, &k)).unwrap();
        assert_eq!(k, k2);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_roots("0 1 0 0\n# c\n0 1 0\n").unwrap_err();
        assert!(matches!(err, RootError::Parse { line: 3, .. }));
        let err = parse_roots("1 0 0 2\n").unwrap_err();
        assert!(matches!(err, RootError::Parse { line: 1, .. }));
        let sys = build_b(1);
        assert!(parse_assignments(&sys, "k.0 = 1\n").is_err());
        assert!(parse_assignments(&sys, "orbit.a = 0\nk.a = 1\nk.1 = 2").is_err());
        assert_eq!(parse_assignments(&sys, "k = 1/2").unwrap(), MultiplicityFunction::uniform(&sys, Exact::frac(1, 2)));
    }
}
