//! Simple domains (a region cut away from rays issuing from singular
//! points) and their covering polygons.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ZeroCountError;

/// Pole clearance constant: segments keep `rho / (CLEARANCE_CONSTANT * max(1, |Z|))`
/// away from the poles.
pub const CLEARANCE_CONSTANT: f64 = 4.0;

/// Segment count cap: at most `SEGMENT_CAP_FACTOR * max(1, |sigma|^2)`.
pub const SEGMENT_CAP_FACTOR: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Disc {
        center: Complex64,
        radius: f64,
    },
    /// Vertices of a simple polygon, in order.
    Polygon {
        vertices: Vec<Complex64>,
    },
}

impl Region {
    /// Distance from `p` to the closed region.
    pub fn distance(&self, p: Complex64) -> f64 {
        match self {
            Region::Disc { center, radius } => ((p - center).norm() - radius).max(0.0),
            Region::Polygon { vertices } => {
                if point_in_polygon(p, vertices) {
                    0.0
                } else {
                    polygon_edges(vertices)
                        .map(|(a, b)| segment_distance(p, a, b))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// Distance from a ray to the region.
    pub fn ray_distance(&self, origin: Complex64, dir: Complex64) -> f64 {
        match self {
            Region::Disc { center, radius } => (ray_point_distance(origin, dir, *center) - radius).max(0.0),
            Region::Polygon { vertices } => {
                if polygon_edges(vertices).any(|(a, b)| ray_hits_segment(origin, dir, a, b)) {
                    return 0.0;
                }
                let from_vertices = vertices
                    .iter()
                    .map(|&v| ray_point_distance(origin, dir, v))
                    .fold(f64::INFINITY, f64::min);
                from_vertices.min(self.distance(origin))
            }
        }
    }

    pub fn max_modulus(&self) -> f64 {
        match self {
            Region::Disc { center, radius } => center.norm() + radius,
            Region::Polygon { vertices } => vertices.iter().map(|v| v.norm()).fold(0.0, f64::max),
        }
    }

    fn centroid(&self) -> Complex64 {
        match self {
            Region::Disc { center, .. } => *center,
            Region::Polygon { vertices } => vertices.iter().sum::<Complex64>() / vertices.len().max(1) as f64,
        }
    }
}

/// A region inside the plane cut along rays issuing from each point of
/// `sigma`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleDomain {
    pub sigma: Vec<Complex64>,
    /// Unit direction of the ray at each point of `sigma`.
    pub ray_directions: Vec<Complex64>,
    pub region: Region,
    pub rho: f64,
    /// Allows regions leaving the closed unit disc.
    pub relaxed_bounds: bool,
}

impl SimpleDomain {
    /// A domain with rays chosen automatically: each ray points away from
    /// the region, rotated as needed to avoid the region and other rays.
    pub fn with_auto_rays(sigma: Vec<Complex64>, region: Region, rho: f64) -> Result<Self, ZeroCountError> {
        let c = region.centroid();
        let mut dirs: Vec<Complex64> = Vec::with_capacity(sigma.len());
        for (k, &s) in sigma.iter().enumerate() {
            let away = if (s - c).norm() > 0.0 {
                (s - c) / (s - c).norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            let mut found = None;
            'search: for step in 0..64 {
                for sign in [1.0, -1.0] {
                    let ang = sign * step as f64 * PI / 32.0;
                    let d = away * Complex64::from_polar(1.0, ang);
                    let clear_region = region.ray_distance(s, d) > 0.5 * rho;
                    let clear_rays = sigma[..k]
                        .iter()
                        .zip(&dirs)
                        .all(|(&o, &od)| !rays_intersect(s, d, o, od));
                    let clear_points = sigma
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != k)
                        .all(|(_, &o)| ray_point_distance(s, d, o) > 0.0);
                    if clear_region && clear_rays && clear_points {
                        found = Some(d);
                        break 'search;
                    }
                }
            }
            dirs.push(found.ok_or(ZeroCountError::InvalidRays)?);
        }
        let dom = SimpleDomain {
            sigma,
            ray_directions: dirs,
            region,
            rho,
            relaxed_bounds: false,
        };
        Ok(dom)
    }

    /// Checks the domain invariants.
    pub fn validate(&self) -> Result<(), ZeroCountError> {
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(ZeroCountError::InvalidRho(self.rho));
        }
        match &self.region {
            Region::Disc { radius, .. } if !(*radius >= 0.0) => {
                return Err(ZeroCountError::InvalidDomain("negative disc radius"))
            }
            Region::Polygon { vertices } if vertices.len() < 3 => {
                return Err(ZeroCountError::InvalidDomain("polygon needs three vertices"))
            }
            _ => {}
        }
        if self.ray_directions.len() != self.sigma.len() {
            return Err(ZeroCountError::InvalidDomain("one ray per singular point"));
        }
        for i in 0..self.sigma.len() {
            for j in i + 1..self.sigma.len() {
                if rays_intersect(
                    self.sigma[i],
                    self.ray_directions[i],
                    self.sigma[j],
                    self.ray_directions[j],
                ) {
                    return Err(ZeroCountError::InvalidRays);
                }
            }
        }
        for (&s, &d) in self.sigma.iter().zip(&self.ray_directions) {
            if self.region.distance(s) < self.rho {
                return Err(ZeroCountError::InvalidDomain(
                    "region closer than rho to a singular point",
                ));
            }
            if self.region.ray_distance(s, d) <= 0.0 {
                return Err(ZeroCountError::InvalidDomain("a ray meets the region"));
            }
        }
        if !self.relaxed_bounds && self.region.max_modulus() > 1.0 + 1e-12 {
            return Err(ZeroCountError::InvalidDomain(
                "region leaves the unit disc (set relaxed bounds to allow)",
            ));
        }
        Ok(())
    }
}

/// Closed polygon covering the region of a simple domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentSet {
    pub segments: Vec<(Complex64, Complex64)>,
    /// Smallest distance from a segment to a pole.
    pub clearance_to_poles: f64,
    pub provenance: Provenance,
}

/// How a [`SegmentSet`] was built and which constraints it satisfies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub clearance_constant: f64,
    pub segment_cap: usize,
    pub required_pole_clearance: f64,
    pub required_ray_clearance: f64,
}

impl SegmentSet {
    pub fn empty(construction: &str) -> Self {
        SegmentSet {
            segments: Vec::new(),
            clearance_to_poles: f64::INFINITY,
            provenance: Provenance {
                construction: construction.to_string(),
                clearance_constant: CLEARANCE_CONSTANT,
                segment_cap: SEGMENT_CAP_FACTOR,
                required_pole_clearance: 0.0,
                required_ray_clearance: 0.0,
            },
        }
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|(a, b)| (b - a).norm()).sum()
    }

    /// Vertices of the closed polygon, in order.
    pub fn vertices(&self) -> Vec<Complex64> {
        self.segments.iter().map(|s| s.0).collect()
    }

    /// Re-checks the clearance, count and covering invariants.
    pub fn check(&self, dom: &SimpleDomain, poles: &[Complex64]) -> Result<(), ZeroCountError> {
        let p = &self.provenance;
        if self.segments.len() > p.segment_cap {
            return Err(ZeroCountError::InfeasibleClearance("too many segments"));
        }
        for &(a, b) in &self.segments {
            for &z in poles {
                if segment_distance(z, a, b) < p.required_pole_clearance {
                    return Err(ZeroCountError::InfeasibleClearance("segment too close to a pole"));
                }
            }
            for (&s, &d) in dom.sigma.iter().zip(&dom.ray_directions) {
                if segment_ray_distance(a, b, s, d) < p.required_ray_clearance {
                    return Err(ZeroCountError::InfeasibleClearance("segment too close to a ray"));
                }
            }
        }
        let verts = self.vertices();
        if !verts.is_empty() {
            let covered = match &dom.region {
                Region::Disc { center, radius } => {
                    point_in_polygon(*center, &verts)
                        && self
                            .segments
                            .iter()
                            .all(|&(a, b)| segment_distance(*center, a, b) >= radius * (1.0 - 1e-12))
                }
                Region::Polygon { vertices } => vertices.iter().all(|&v| {
                    point_in_polygon(v, &verts) || self.segments.iter().any(|&(a, b)| segment_distance(v, a, b) < 1e-12)
                }),
            };
            if !covered {
                return Err(ZeroCountError::InfeasibleClearance("polygon does not cover the region"));
            }
        }
        Ok(())
    }
}

/// Covers the region by a closed polygon whose segments keep
/// `rho / (4 max(1, |poles|))` away from every pole and `rho / 2` away from
/// every ray. Disc regions get the regular polygon with the fewest sides
/// (starting from a square) that satisfies the clearances; polygon regions
/// use their own boundary.
pub fn decompose_simple_domain(dom: &SimpleDomain, poles: &[Complex64]) -> Result<SegmentSet, ZeroCountError> {
    dom.validate()?;
    let nz = poles.len().max(1) as f64;
    let pole_clear = dom.rho / (CLEARANCE_CONSTANT * nz);
    let ray_clear = 0.5 * dom.rho;
    let cap = SEGMENT_CAP_FACTOR * dom.sigma.len().pow(2).max(1);
    let provenance = |construction: String| Provenance {
        construction,
        clearance_constant: CLEARANCE_CONSTANT,
        segment_cap: cap,
        required_pole_clearance: pole_clear,
        required_ray_clearance: ray_clear,
    };
    let finish = |segments: Vec<(Complex64, Complex64)>, construction: String| {
        let clearance = segments
            .iter()
            .flat_map(|&(a, b)| poles.iter().map(move |&z| segment_distance(z, a, b)))
            .fold(f64::INFINITY, f64::min);
        let set = SegmentSet {
            segments,
            clearance_to_poles: clearance,
            provenance: provenance(construction),
        };
        set.check(dom, poles).map(|_| set)
    };
    match &dom.region {
        Region::Disc { radius, .. } if *radius == 0.0 => Ok(SegmentSet {
            provenance: provenance("degenerate region".into()),
            ..SegmentSet::empty("degenerate region")
        }),
        Region::Disc { center, radius } => {
            let mut sides = 4usize;
            while sides <= cap {
                for k in 0..8 {
                    let inradius = radius * (1.0 + 0.02 * k as f64);
                    for r in 0..4 {
                        let rot = PI * r as f64 / (2.0 * sides as f64);
                        let circum = inradius / (PI / sides as f64).cos();
                        let verts: Vec<Complex64> = (0..sides)
                            .map(|i| {
                                center
                                    + Complex64::from_polar(
                                        circum,
                                        rot + PI / sides as f64 + 2.0 * PI * i as f64 / sides as f64,
                                    )
                            })
                            .collect();
                        let segs: Vec<(Complex64, Complex64)> = polygon_edges(&verts).collect();
                        let label = format!("regular {sides}-gon, inradius {inradius}");
                        if let Ok(set) = finish(segs, label) {
                            return Ok(set);
                        }
                    }
                }
                sides *= 2;
            }
            Err(ZeroCountError::InfeasibleClearance(
                "no covering polygon keeps the clearances",
            ))
        }
        Region::Polygon { vertices } => {
            let segs: Vec<(Complex64, Complex64)> = polygon_edges(vertices).collect();
            finish(segs, "region boundary".into())
        }
    }
}

pub(crate) fn polygon_edges(v: &[Complex64]) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
    (0..v.len()).map(move |i| (v[i], v[(i + 1) % v.len()]))
}

pub(crate) fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = ((p - a) * ab.conj()).re / len2;
    (p - (a + ab * s.clamp(0.0, 1.0))).norm()
}

fn ray_point_distance(origin: Complex64, dir: Complex64, p: Complex64) -> f64 {
    let s = ((p - origin) * dir.conj()).re.max(0.0);
    (p - (origin + dir * s)).norm()
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn ray_hits_segment(origin: Complex64, dir: Complex64, a: Complex64, b: Complex64) -> bool {
    let e = b - a;
    let den = cross(dir, e);
    if den == 0.0 {
        return ray_point_distance(origin, dir, a) == 0.0 || ray_point_distance(origin, dir, b) == 0.0;
    }
    let w = a - origin;
    let s = cross(w, e) / den;
    let u = cross(w, dir) / den;
    s >= 0.0 && (0.0..=1.0).contains(&u)
}

fn segment_ray_distance(a: Complex64, b: Complex64, origin: Complex64, dir: Complex64) -> f64 {
    if ray_hits_segment(origin, dir, a, b) {
        return 0.0;
    }
    ray_point_distance(origin, dir, a)
        .min(ray_point_distance(origin, dir, b))
        .min(segment_distance(origin, a, b))
}

/// Whether two rays share a point.
pub fn rays_intersect(p: Complex64, d: Complex64, q: Complex64, e: Complex64) -> bool {
    let den = cross(d, e);
    let w = q - p;
    if den.abs() <= 1e-15 {
        if cross(w, d).abs() > 1e-12 * (1.0 + w.norm()) {
            return false;
        }
        return ray_point_distance(p, d, q) <= 1e-12 || ray_point_distance(q, e, p) <= 1e-12;
    }
    let s = cross(w, e) / den;
    let u = cross(w, d) / den;
    s >= 0.0 && u >= 0.0
}

pub(crate) fn point_in_polygon(p: Complex64, v: &[Complex64]) -> bool {
    let mut inside = false;
    for (a, b) in polygon_edges(v) {
        if (a.im > p.im) != (b.im > p.im) {
            let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if p.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cut_disc_away_from_origin() {
        let dom = SimpleDomain {
            sigma: vec![c(0.0, 0.0)],
            ray_directions: vec![c(-1.0, 0.0)],
            region: Region::Disc {
                center: c(1.0, 0.0),
                radius: 0.4,
            },
            rho: 0.5,
            relaxed_bounds: true,
        };
        let set = decompose_simple_domain(&dom, &[c(0.0, 0.0)]).unwrap();
        assert!(set.segments.len() <= 64);
        for &(a, b) in &set.segments {
            assert!(segment_distance(c(0.0, 0.0), a, b) >= 0.125);
        }
        let strict = SimpleDomain {
            relaxed_bounds: false,
            ..dom
        };
        assert!(matches!(
            decompose_simple_domain(&strict, &[c(0.0, 0.0)]),
            Err(ZeroCountError::InvalidDomain(_))
        ));
    }

    #[test]
    fn no_cuts_gives_square() {
        let dom = SimpleDomain {
            sigma: vec![],
            ray_directions: vec![],
            region: Region::Disc {
                center: c(0.0, 0.0),
                radius: 0.5,
            },
            rho: 0.1,
            relaxed_bounds: false,
        };
        let set = decompose_simple_domain(&dom, &[]).unwrap();
        assert_eq!(set.segments.len(), 4);
        let lens: Vec<f64> = set.segments.iter().map(|(a, b)| (b - a).norm()).collect();
        for l in lens {
            assert!((l - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn crossing_rays_rejected() {
        let dom = SimpleDomain {
            sigma: vec![c(-0.9, -0.9), c(0.9, -0.9)],
            ray_directions: vec![c(1.0, 1.0) / 2f64.sqrt(), c(-1.0, 1.0) / 2f64.sqrt()],
            region: Region::Disc {
                center: c(0.0, 0.5),
                radius: 0.1,
            },
            rho: 0.1,
            relaxed_bounds: true,
        };
        assert_eq!(decompose_simple_domain(&dom, &[]), Err(ZeroCountError::InvalidRays));
    }

    #[test]
    fn polygon_region_uses_its_boundary() {
        let dom = SimpleDomain::with_auto_rays(
            vec![c(0.0, 0.9)],
            Region::Polygon {
                vertices: vec![c(-0.3, -0.3), c(0.3, -0.3), c(0.3, 0.3), c(-0.3, 0.3)],
            },
            0.2,
        )
        .unwrap();
        let set = decompose_simple_domain(&dom, &dom.sigma.clone()).unwrap();
        assert_eq!(set.segments.len(), 4);
    }

    #[test]
    fn randomized_instances_keep_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut built = 0;
        for _ in 0..100 {
            let n = rng.gen_range(0..4);
            let sigma: Vec<Complex64> = (0..n)
                .map(|_| Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0 * PI)))
                .collect();
            let center = Complex64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..2.0 * PI));
            let radius = rng.gen_range(0.02..0.3);
            let rho = rng.gen_range(0.01..0.2);
            let region = Region::Disc { center, radius };
            let Ok(mut dom) = SimpleDomain::with_auto_rays(sigma.clone(), region, rho) else {
                continue;
            };
            dom.relaxed_bounds = true;
            let mut poles = sigma.clone();
            poles.push(center + Complex64::from_polar(radius * 1.5, 0.3));
            match decompose_simple_domain(&dom, &poles) {
                Ok(set) => {
                    built += 1;
                    set.check(&dom, &poles).unwrap();
                    assert!(set.segments.len() <= 64 * n.max(1) * n.max(1));
                }
                Err(ZeroCountError::InvalidDomain(_)) | Err(ZeroCountError::InfeasibleClearance(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(built > 30, "{built}");
    }
}
