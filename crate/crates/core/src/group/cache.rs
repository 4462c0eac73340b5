//! On-disk cache of enumerated groups.
//!
//! Text format, one record per line:
//!
//! ```text
//! octalab-group-cache 1
//! code 0.1.0
//! labels p0 p1 ...
//! generators K
//! <K image arrays>
//! elements M
//! <M image arrays>
//! sha256 <hex digest of every preceding byte>
//! ```
//!
//! Element order is stored verbatim so that indices into a reloaded group
//! agree with the freshly enumerated one.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexSet;
use sha2::{Digest, Sha256};

use super::{Domain, GroupError, Perm, PermGroup};

pub const CACHE_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "octalab-group-cache";

/// What `load_or_build` did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Disabled,
    Hit(PathBuf),
    Built(PathBuf),
    /// The file existed but failed validation and was rewritten.
    Rebuilt { path: PathBuf, reason: String },
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn push_perm(out: &mut String, p: &Perm) {
    let mut first = true;
    for &x in p.images() {
        if !first {
            out.push(' ');
        }
        let _ = write!(out, "{x}");
        first = false;
    }
    out.push('\n');
}

/// Cache file name keyed by the generator list, the format version and the
/// crate version.
pub fn cache_file_name(domain: &Domain, generators: &[Perm]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{MAGIC} {CACHE_FORMAT_VERSION} {}\n", env!("CARGO_PKG_VERSION")));
    for l in domain.labels() {
        h.update(l.as_bytes());
        h.update(b" ");
    }
    for g in generators {
        for &x in g.images() {
            h.update(x.to_le_bytes());
        }
    }
    format!("group-{}.txt", &hex(&h.finalize())[..16])
}

pub fn write_group(g: &PermGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {CACHE_FORMAT_VERSION}");
    let _ = writeln!(out, "code {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "labels {}", g.domain().labels().join(" "));
    let _ = writeln!(out, "generators {}", g.generators().len());
    for p in g.generators() {
        push_perm(&mut out, p);
    }
    let _ = writeln!(out, "elements {}", g.order());
    for p in g.elements() {
        push_perm(&mut out, p);
    }
    let digest = hex(&Sha256::digest(out.as_bytes()));
    let _ = writeln!(out, "sha256 {digest}");
    out
}

fn corrupt(msg: impl Into<String>) -> GroupError {
    GroupError::CacheCorrupt(msg.into())
}

pub fn read_group(text: &str) -> Result<PermGroup, GroupError> {
    let body_end = text
        .trim_end_matches('\n')
        .rfind('\n')
        .map(|i| i + 1)
        .ok_or_else(|| corrupt("truncated"))?;
    let (body, trailer) = text.split_at(body_end);
    let stored = trailer
        .trim_end()
        .strip_prefix("sha256 ")
        .ok_or_else(|| corrupt("missing checksum"))?;
    if hex(&Sha256::digest(body.as_bytes())) != stored {
        return Err(corrupt("checksum mismatch"));
    }

    let mut lines = body.lines();
    let mut next = || lines.next().ok_or_else(|| corrupt("truncated"));
    if next()? != format!("{MAGIC} {CACHE_FORMAT_VERSION}") {
        return Err(corrupt("unknown format version"));
    }
    if next()? != format!("code {}", env!("CARGO_PKG_VERSION")) {
        return Err(corrupt("written by a different code version"));
    }
    let labels: Vec<String> = next()?
        .strip_prefix("labels ")
        .ok_or_else(|| corrupt("missing labels"))?
        .split(' ')
        .map(str::to_owned)
        .collect();
    let domain = Domain::new(labels)?;
    let n = domain.len();

    let mut read_block = |tag: &str| -> Result<Vec<Perm>, GroupError> {
        let count: usize = next()?
            .strip_prefix(tag)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| corrupt(format!("missing {tag}count")))?;
        (0..count)
            .map(|_| {
                let images = next()?
                    .split(' ')
                    .map(|t| t.parse::<usize>().map_err(|_| corrupt("bad index")))
                    .collect::<Result<Vec<_>, _>>()?;
                if images.len() != n {
                    return Err(corrupt("permutation of wrong degree"));
                }
                Perm::from_images(&images)
            })
            .collect()
    };
    let generators = read_block("generators ")?;
    let elements = read_block("elements ")?;
    let count = elements.len();
    let elements: IndexSet<Perm> = elements.into_iter().collect();
    if elements.len() != count {
        return Err(corrupt("repeated element"));
    }
    Ok(PermGroup::from_parts(domain, generators, elements))
}

/// Load the group generated by `generators` from `dir`, or enumerate it and
/// write the cache. A cache that fails validation is rebuilt.
pub fn load_or_build(
    dir: Option<&Path>,
    domain: Domain,
    generators: Vec<Perm>,
    budget: usize,
) -> Result<(PermGroup, CacheOutcome), GroupError> {
    let Some(dir) = dir else {
        return Ok((PermGroup::closure(domain, generators, budget)?, CacheOutcome::Disabled));
    };
    let path = dir.join(cache_file_name(&domain, &generators));
    let mut failure = None;
    if let Ok(text) = fs::read_to_string(&path) {
        match read_group(&text) {
            Ok(g) if g.generators() == generators.as_slice() && g.domain() == &domain => {
                return Ok((g, CacheOutcome::Hit(path)));
            }
            Ok(_) => failure = Some("generator or domain mismatch".to_owned()),
            Err(e) => failure = Some(e.to_string()),
        }
    }
    let g = PermGroup::closure(domain, generators, budget)?;
    fs::create_dir_all(dir)?;
    fs::write(&path, write_group(&g))?;
    let outcome = match failure {
        Some(reason) => CacheOutcome::Rebuilt { path, reason },
        None => CacheOutcome::Built(path),
    };
    Ok((g, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_BUDGET;

    fn s4() -> (Domain, Vec<Perm>) {
        (
            Domain::numbered(4),
            vec![Perm::from_images(&[1, 2, 3, 0]).unwrap(), Perm::from_images(&[1, 0, 2, 3]).unwrap()],
        )
    }

    #[test]
    fn round_trip_preserves_order() {
        let (d, gens) = s4();
        let g = PermGroup::closure(d, gens, DEFAULT_ELEMENT_BUDGET).unwrap();
        let text = write_group(&g);
        let h = read_group(&text).unwrap();
        assert_eq!(h.order(), 24);
        assert!(g.elements().eq(h.elements()));
        assert_eq!(write_group(&h), text);
    }

    #[test]
    fn tampering_is_detected() {
        let (d, gens) = s4();
        let g = PermGroup::closure(d, gens, DEFAULT_ELEMENT_BUDGET).unwrap();
        let text = write_group(&g).replacen("elements 24\n0 1 2 3", "elements 24\n1 0 2 3", 1);
        assert!(matches!(read_group(&text), Err(GroupError::CacheCorrupt(_))));
        assert!(read_group("").is_err());
    }

    #[test]
    fn corrupt_file_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let (d, gens) = s4();
        let (_, o1) = load_or_build(Some(dir.path()), d.clone(), gens.clone(), 100).unwrap();
        let CacheOutcome::Built(path) = o1 else { panic!("expected a fresh build") };
        let (_, o2) = load_or_build(Some(dir.path()), d.clone(), gens.clone(), 100).unwrap();
        assert_eq!(o2, CacheOutcome::Hit(path.clone()));
        fs::write(&path, "garbage\n").unwrap();
        let (g, o3) = load_or_build(Some(dir.path()), d, gens, 100).unwrap();
        assert!(matches!(o3, CacheOutcome::Rebuilt { .. }));
        assert_eq!(g.order(), 24);
    }
}
