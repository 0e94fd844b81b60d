//! Rotation by `k` steps, rotation classes, their labeling, and the
//! bijection between `X = n-1` paths and `X = i` paths when `j = 1`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{count_above, family_rise, Baseline};
use crate::path::{DiagonalPath, FamilyParams};

/// Moves the first `k` steps to the end.
pub fn rotate_left_k(path: &DiagonalPath, params: &FamilyParams) -> Result<DiagonalPath> {
    let k = params.k();
    if !path.len().is_multiple_of(k as usize) {
        return Err(Error::LengthNotDivisible { len: path.len(), k });
    }
    Ok(path.rotate_left(k as usize))
}

/// `path = root^power` with `|root|` a multiple of `k` and `power` maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub root: DiagonalPath,
    pub power: u32,
}

pub fn primitive_decomposition(
    path: &DiagonalPath,
    params: &FamilyParams,
) -> Result<PrimitiveDecomposition> {
    path.require_member(params)?;
    let (n, k) = (params.n(), params.k() as usize);
    let blocks = (1..=n)
        .filter(|b| n % b == 0)
        .find(|&b| path.rotate_left(b as usize * k) == *path)
        .unwrap_or(n);
    let power = n / blocks;
    assert!(
        params.j().is_multiple_of(power),
        "period {power} of {path} does not divide j = {}",
        params.j()
    );
    Ok(PrimitiveDecomposition {
        root: path.split_at(blocks as usize * k).0,
        power,
    })
}

/// An orbit under rotation by `k`, listed from its minimal-rank member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationClass {
    params: FamilyParams,
    members: Vec<DiagonalPath>,
}

impl RotationClass {
    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    /// `members()[t]` is the representative rotated left by `t·k` steps.
    pub fn members(&self) -> &[DiagonalPath] {
        &self.members
    }

    pub fn representative(&self) -> &DiagonalPath {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The `r` of the primitive decomposition; `len() == n / r`.
    pub fn power(&self) -> u32 {
        self.params.n() / self.members.len() as u32
    }

    pub fn contains(&self, path: &DiagonalPath) -> bool {
        self.members.contains(path)
    }
}

pub fn orbit(path: &DiagonalPath, params: &FamilyParams) -> Result<RotationClass> {
    let decomposition = primitive_decomposition(path, params)?;
    let size = (params.n() / decomposition.power) as usize;
    let k = params.k() as usize;
    let least = (0..size)
        .map(|t| path.rotate_left(t * k))
        .min()
        .expect("orbits are nonempty");
    Ok(RotationClass {
        params: *params,
        members: (0..size).map(|t| least.rotate_left(t * k)).collect(),
    })
}

/// True iff `path` is the minimal-rank member of its orbit.
pub fn is_canonical(path: &DiagonalPath, params: &FamilyParams) -> bool {
    let k = params.k() as usize;
    (1..params.n() as usize).all(|t| path.rotate_left(t * k) >= *path)
}

/// One marked member of a rotation class together with its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabeledObject {
    /// Index into [`RotationClass::members`].
    pub offset: u32,
    pub mark: u32,
    /// Left endpoint of the object's baseline in the doubled diagram.
    pub endpoint: (i64, i64),
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledClass {
    class: RotationClass,
    objects: Vec<LabeledObject>,
}

impl LabeledClass {
    pub fn class(&self) -> &RotationClass {
        &self.class
    }

    pub fn objects(&self) -> &[LabeledObject] {
        &self.objects
    }

    pub fn path_of(&self, object: &LabeledObject) -> &DiagonalPath {
        &self.class.members[object.offset as usize]
    }

    pub fn label_of(&self, path: &DiagonalPath, mark: u32) -> Option<u32> {
        let offset = self.class.members.iter().position(|p| p == path)? as u32;
        self.objects
            .iter()
            .find(|o| o.offset == offset && o.mark == mark)
            .map(|o| o.label)
    }

    /// How many objects carry each label `0..n`.
    pub fn label_counts(&self) -> Vec<u32> {
        let mut counts = alloc::vec![0u32; self.class.params.n() as usize];
        for object in &self.objects {
            counts[object.label as usize] += 1;
        }
        counts
    }
}

/// Labels every `(member, mark)` object of a class.
///
/// Let `W = P·P` for the representative `P` and let `H` be its heights. The
/// object `(R^t P, m)` owns the baseline through `(tk, H(tk) + 2(m-1))`.
/// With the integer levels `a(s) = (H(sk) + (k-2)s) / 2`, the point `sk`
/// with `t < s < t + n` lies above that baseline exactly when
/// `a(s) - a(t) - (m-1) > (s-t)/n`. The right side is strictly between 0 and
/// 1, so the test is `a(s) >= a(t) + m`. The label counts those points:
/// `#{u in 1..n : a(t+u) >= a(t) + m}`. No baseline arithmetic is involved,
/// which makes "label = X" a genuine cross-check of [`crate::geometry`].
pub fn label_class(cls: &RotationClass) -> LabeledClass {
    let params = cls.params;
    let (n, k, j) = (params.n() as usize, params.k() as usize, params.j());
    let p = cls.representative();
    let kn = n * k;
    let doubled_height = |x: usize| {
        if x <= kn {
            p.height_at(x)
        } else {
            p.end_height() + p.height_at(x - kn)
        }
    };
    let levels: Vec<i64> = (0..cls.len() + n)
        .map(|s| {
            let twice = doubled_height(s * k) + (k as i64 - 2) * s as i64;
            debug_assert_eq!(twice.rem_euclid(2), 0);
            twice / 2
        })
        .collect();

    let mut objects = Vec::with_capacity(cls.len() * j as usize);
    for t in 0..cls.len() {
        for mark in 1..=j {
            let threshold = levels[t] + i64::from(mark);
            let label = (1..n).filter(|u| levels[t + u] >= threshold).count() as u32;
            objects.push(LabeledObject {
                offset: t as u32,
                mark,
                endpoint: (
                    (t * k) as i64,
                    p.height_at(t * k) + 2 * (i64::from(mark) - 1),
                ),
                label,
            });
        }
    }
    LabeledClass {
        class: cls.clone(),
        objects,
    }
}

fn require_single_mark(params: &FamilyParams) -> Result<()> {
    if params.j() == 1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "the rotation bijection needs j = 1, got {params}"
        )))
    }
}

/// The member of `path`'s class with `X = target`, for `path` with
/// `X = n - 1` in a `j = 1` family.
pub fn bijection_to(path: &DiagonalPath, params: &FamilyParams, target: u32) -> Result<DiagonalPath> {
    require_single_mark(params)?;
    path.require_member(params)?;
    let n = params.n();
    if target >= n {
        return Err(Error::Precondition(format!(
            "target {target} outside 0..{n}"
        )));
    }
    let line = Baseline::new(family_rise(params), params.len() as i64, 0)?;
    let x = count_above(path, params, &line);
    if x != n - 1 {
        return Err(Error::Precondition(format!(
            "{path} has X = {x}, expected {}",
            n - 1
        )));
    }
    let labeled = label_class(&orbit(path, params)?);
    let object = labeled
        .objects()
        .iter()
        .find(|o| o.label == target)
        .ok_or_else(|| Error::IdentityFailure(format!("no member of the class of {path} has label {target}")))?;
    Ok(*labeled.path_of(object))
}

/// Rotates `q` so that it starts at its lowest `k`-divisible point measured
/// against the common slope; the result has `X = n - 1`.
pub fn bijection_inverse(q: &DiagonalPath, params: &FamilyParams) -> Result<DiagonalPath> {
    require_single_mark(params)?;
    q.require_member(params)?;
    let (kn, k) = (params.len() as i64, params.k() as usize);
    let slope_term = -family_rise(params);
    let relative = |t: usize| {
        let x = t * k;
        i128::from(kn) * i128::from(q.height_at(x)) + i128::from(slope_term) * x as i128
    };
    let lowest = (0..params.n() as usize)
        .min_by_key(|&t| relative(t))
        .expect("n >= 1");
    debug_assert_eq!(
        (0..params.n() as usize)
            .filter(|&t| relative(t) == relative(lowest))
            .count(),
        1
    );
    Ok(q.rotate_left(lowest * k))
}
