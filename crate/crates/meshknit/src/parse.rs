//! Text forms of sections, dimension vectors, points and groups as accepted on the
//! command line.

use crate::config::Configuration;
use crate::dynkin::{DynkinTree, TreeAutomorphism};
use crate::error::{Error, Result};
use crate::groups::AdmissibleGroup;
use crate::quiver::{Point, Section};

fn ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|v| v.trim().parse::<i64>().map_err(|_| Error::BadArgument(format!("not an integer list: {s}"))))
        .collect()
}

pub fn dims(s: &str) -> Result<Vec<i64>> {
    ints(s)
}

/// `equi`, or comma-separated levels `l(1),…,l(n)`.
pub fn section(t: &DynkinTree, s: &str) -> Result<Section> {
    if s == "equi" {
        return Ok(Section::equioriented(t));
    }
    Section::new(t, ints(s)?)
}

/// `i,x` for a stable point, `i,x*` for a projective.
pub fn point(s: &str) -> Result<Point> {
    let (body, proj) = match s.strip_suffix('*') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let v = ints(body.trim_start_matches('(').trim_end_matches(')'))?;
    let [i, x] = v[..] else {
        return Err(Error::BadArgument(format!("expected i,x: {s}")));
    };
    if x < 1 {
        return Err(Error::BadArgument(format!("vertex must be positive: {s}")));
    }
    Ok(if proj { Point::proj(i, x as usize) } else { Point::stable(i, x as usize) })
}

/// `nu` (= τ^L), `tau:r`, `glide:r` or `auto:r:g1,…,gn` with the images of the vertices.
pub fn group(t: &DynkinTree, s: &str) -> Result<AdmissibleGroup> {
    let bad = || Error::BadArgument(format!("unknown group {s}"));
    let parts: Vec<&str> = s.split(':').collect();
    let r = |k: usize| parts.get(k).and_then(|v| v.parse::<i64>().ok()).ok_or_else(bad);
    match parts[0] {
        "nu" if parts.len() == 1 => Ok(AdmissibleGroup::tau(t.loewy_number() as i64)),
        "tau" if parts.len() == 2 => Ok(AdmissibleGroup::tau(r(1)?)),
        "glide" if parts.len() == 2 => Ok(AdmissibleGroup::glide(r(1)?)),
        "auto" if parts.len() == 3 => {
            let images: Vec<usize> = ints(parts[2])?.into_iter().map(|v| v.max(0) as usize).collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            if sorted != (1..=t.rank()).collect::<Vec<_>>() {
                return Err(Error::BadArgument(format!("not a permutation of 1..{}: {}", t.rank(), parts[2])));
            }
            Ok(AdmissibleGroup::twisted(r(1)?, TreeAutomorphism::from_images(images)))
        }
        _ => Err(bad()),
    }
}

pub fn configuration(json: &str) -> Result<Configuration> {
    Configuration::from_json(json)
}
