//! Homogeneous transforms, axis rotations and the plane-intersection angle.
//!
//! Column vectors, transforms act on the left. A chain written
//! `A B C` is applied as `A * (B * (C * p))`.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::error::{HandError, Result, SINGULAR_EPS};

pub type Vec3 = Vector3<f64>;

/// Rigid homogeneous transform in mm / rad.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transform4(Matrix4<f64>);

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(HandError::InvalidArgument(format!(
            "{what} must be finite, got {v}"
        )))
    }
}

impl Transform4 {
    pub fn identity() -> Self {
        Transform4(Matrix4::identity())
    }

    fn from_rotation(r: Matrix3<f64>) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&r);
        Transform4(m)
    }

    fn from_translation(t: Vec3) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&t);
        Transform4(m)
    }

    pub fn rot_x(angle: f64) -> Result<Self> {
        Ok(Self::from_rotation(rx(finite(angle, "rotation angle")?)))
    }

    pub fn rot_y(angle: f64) -> Result<Self> {
        Ok(Self::from_rotation(ry(finite(angle, "rotation angle")?)))
    }

    pub fn rot_z(angle: f64) -> Result<Self> {
        Ok(Self::from_rotation(rz(finite(angle, "rotation angle")?)))
    }

    pub fn trans_x(len: f64) -> Result<Self> {
        Ok(Self::from_translation(Vec3::new(
            finite(len, "translation")?,
            0.0,
            0.0,
        )))
    }

    pub fn trans_y(len: f64) -> Result<Self> {
        Ok(Self::from_translation(Vec3::new(
            0.0,
            finite(len, "translation")?,
            0.0,
        )))
    }

    pub fn trans_z(len: f64) -> Result<Self> {
        Ok(Self::from_translation(Vec3::new(
            0.0,
            0.0,
            finite(len, "translation")?,
        )))
    }

    /// Pure translation by an arbitrary vector.
    pub fn translation_by(t: Vec3) -> Result<Self> {
        if t.iter().all(|v| v.is_finite()) {
            Ok(Self::from_translation(t))
        } else {
            Err(HandError::InvalidArgument(
                "translation must be finite".into(),
            ))
        }
    }

    /// Pure rotation from a matrix assumed orthonormal.
    pub fn rotation_by(r: Matrix3<f64>) -> Self {
        Self::from_rotation(r)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn rotation(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(0, 0).into_owned()
    }

    pub fn translation(&self) -> Vec3 {
        self.0.fixed_view::<3, 1>(0, 3).into_owned()
    }

    /// `self * other`.
    pub fn then(&self, other: &Transform4) -> Transform4 {
        Transform4(self.0 * other.0)
    }

    pub fn apply_point(&self, p: &Vec3) -> Vec3 {
        let h = self.0 * Vector4::new(p.x, p.y, p.z, 1.0);
        Vec3::new(h.x, h.y, h.z)
    }

    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.rotation() * v
    }

    /// Inverse of a rigid transform.
    pub fn inverse(&self) -> Transform4 {
        let rt = self.rotation().transpose();
        let t = -(rt * self.translation());
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&rt);
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&t);
        Transform4(m)
    }
}

/// Left-to-right product of a non-empty chain.
pub fn compose(chain: &[Transform4]) -> Result<Transform4> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| HandError::InvalidArgument("empty transform chain".into()))?;
    Ok(rest.iter().fold(*first, |acc, t| acc.then(t)))
}

pub fn rx(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

pub fn ry(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

pub fn rz(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// Cross-product matrix: `skew(a) * b == a.cross(&b)`.
pub fn skew(v: &Vec3) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Angle between `ray` and the intersection line of two planes through the origin.
///
/// Each plane is given by two spanning vectors. The angle is measured inside
/// `plane1`, turning from `ray` towards whichever spanning vector of `plane1`
/// is farther from `ray`, and reduced modulo π into `[0, π)`. A line has no
/// preferred direction, so the reduction is what makes the result independent
/// of how either plane is spanned; ratios of the form `sin ρ / sin(ρ − c)` are
/// π-periodic and therefore unaffected by it.
pub fn plane_intersection_angle(
    ray: &Vec3,
    plane1: (&Vec3, &Vec3),
    plane2: (&Vec3, &Vec3),
) -> Result<f64> {
    let n1 = plane1.0.cross(plane1.1);
    let n2 = plane2.0.cross(plane2.1);
    if n1.norm() < SINGULAR_EPS || n2.norm() < SINGULAR_EPS {
        return Err(HandError::Singular {
            context: "plane spanned by collinear vectors",
            value: n1.norm().min(n2.norm()),
        });
    }
    let n1 = n1.normalize();
    let n2 = n2.normalize();
    let line = n1.cross(&n2);
    if line.norm() < SINGULAR_EPS {
        return Err(HandError::Singular {
            context: "parallel planes",
            value: line.norm(),
        });
    }
    let line = line.normalize();
    let r = ray.normalize();

    let far = if r.cross(plane1.0).norm() >= r.cross(plane1.1).norm() {
        plane1.0
    } else {
        plane1.1
    };
    let orient = if r.cross(far).dot(&n1) < 0.0 { -n1 } else { n1 };

    let a = r.cross(&line).dot(&orient).atan2(r.dot(&line));
    let folded = a.rem_euclid(std::f64::consts::PI);
    // rem_euclid can land exactly on π after rounding
    Ok(if folded >= std::f64::consts::PI {
        0.0
    } else {
        folded
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_matches_cross() {
        let a = Vec3::new(0.3, -1.2, 2.0);
        let b = Vec3::new(-0.7, 0.1, 0.4);
        assert!((skew(&a) * b - a.cross(&b)).norm() < 1e-15);
    }

    #[test]
    fn inverse_round_trips() {
        let t = compose(&[
            Transform4::rot_z(0.4).unwrap(),
            Transform4::trans_z(12.0).unwrap(),
            Transform4::rot_x(-1.1).unwrap(),
        ])
        .unwrap();
        let p = Vec3::new(1.0, 2.0, 3.0);
        assert!((t.inverse().apply_point(&t.apply_point(&p)) - p).norm() < 1e-12);
    }
}
