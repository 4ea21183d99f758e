//! The exact circle-arc model of the level-0 and level-1 puzzle around a
//! rotation set.
//!
//! The complementary arcs of a rotation set play the role of the level-0
//! sectors `Y_0 ... Y_{q-1}`, with `Y_0` the widest gap (it contains the
//! angle 0) and the induced map advancing `Y_j` to `Y_{j+1}`. Pulling the
//! rotation set back one step under `theta -> d*theta` refines the circle
//! into `q*d` level-1 arcs: the `d` preimage arcs of `Y_1` are the central
//! arcs `C`, and for every other sector exactly one preimage arc lies
//! outside the widest gap (the fan arc `A_j`) while the remaining `d - 1`
//! lie inside it (the branch arcs `B_{k,j}`, numbered counterclockwise from
//! `tau-`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{dmap_orbit, Angle, CircleError, Itinerary, Leg, RotationSet};

/// Step budget for the exact orbit walk inside [`arc_itinerary`].
const ORBIT_STEP_BUDGET: usize = 1 << 20;

/// Role of a level-1 arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcLabel {
    /// One of the `d` preimage arcs of `Y_1`; stands in for the critical
    /// sector.
    Critical,
    /// The preimage arc of `Y_{sector+1}` outside the widest gap
    /// (`A_sector`).
    Fan { sector: usize },
    /// A preimage arc of `Y_{sector+1}` inside the widest gap
    /// (`B_{branch,sector}`), `branch` counted counterclockwise from
    /// `tau-`.
    Branch { branch: usize, sector: usize },
}

/// A level-0 sector: the complementary arc of the rotation set labeled
/// `Y_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorArc {
    pub start: Angle,
    pub end: Angle,
    pub index: usize,
}

/// A level-1 arc together with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledArc {
    pub start: Angle,
    pub end: Angle,
    pub label: ArcLabel,
}

/// The two-level arc decomposition induced by a rotation set.
#[derive(Debug, Clone)]
pub struct ArcModel {
    rotation_set: RotationSet,
    level0: Vec<SectorArc>,
    level1: Vec<LabeledArc>,
    gap: (Angle, Angle),
}

impl ArcModel {
    /// Builds the labeled arc model; fails only when the widest gap of the
    /// rotation set is ambiguous.
    pub fn build(rotation_set: &RotationSet) -> Result<ArcModel, CircleError> {
        let (tau_minus, tau_plus) = rotation_set.widest_gap()?;
        let d = rotation_set.degree();
        let q = rotation_set.q() as usize;
        let p = rotation_set.p() as usize;
        let angles = rotation_set.angles();

        // Level 0: complementary arcs, labeled so the widest gap is Y_0 and
        // the image arc (p positions ahead) carries the next label.
        let gap_position = angles
            .iter()
            .position(|a| *a == tau_minus)
            .expect("gap endpoint belongs to the rotation set");
        let mut sector_of_position = alloc::vec![0usize; q];
        for label in 0..q {
            sector_of_position[(gap_position + label * p) % q] = label;
        }
        let level0: Vec<SectorArc> = (0..q)
            .map(|i| SectorArc {
                start: angles[i].clone(),
                end: angles[(i + 1) % q].clone(),
                index: sector_of_position[i],
            })
            .collect();
        let sector_by_start: BTreeMap<&Angle, usize> =
            level0.iter().map(|arc| (&arc.start, arc.index)).collect();

        // Level 1: complementary arcs of the full preimage of the rotation
        // set. Every such arc maps bijectively onto the level-0 arc between
        // the images of its endpoints.
        let mut points: Vec<Angle> = Vec::with_capacity(q * d as usize);
        for angle in angles {
            for branch in 0..d {
                points.push(Angle::new(
                    (angle.value() + num_rational::BigRational::from_integer(branch.into()))
                        / num_rational::BigRational::from_integer(d.into()),
                ));
            }
        }
        points.sort();
        let count = points.len();
        assert_eq!(count, q * d as usize, "preimage points must be distinct");

        let gap_width = tau_minus.ccw_distance(&tau_plus);
        let mut level1: Vec<LabeledArc> = Vec::with_capacity(count);
        let mut branch_arcs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut fan_seen = alloc::vec![false; q];
        for i in 0..count {
            let start = points[i].clone();
            let end = points[(i + 1) % count].clone();
            let image_start = start.map(d);
            let image_end = end.map(d);
            let sector = *sector_by_start
                .get(&image_start)
                .expect("arc image starts at a rotation-set angle");
            let level0_arc = level0
                .iter()
                .find(|arc| arc.index == sector)
                .expect("every sector labeled");
            assert_eq!(image_end, level0_arc.end, "level-1 arc must map onto one sector");

            let inside_gap = tau_minus.ccw_distance(&start) < gap_width;
            let label = if sector == 1 {
                assert!(inside_gap, "central arcs lie in the widest gap");
                ArcLabel::Critical
            } else {
                // the preimage arcs of Y_{j+1} with j = sector - 1 (mod q)
                let j = (sector + q - 1) % q;
                if inside_gap {
                    branch_arcs.entry(j).or_default().push(i);
                    ArcLabel::Branch { branch: 0, sector: j }
                } else {
                    assert!(!fan_seen[j], "one fan arc per sector");
                    fan_seen[j] = true;
                    ArcLabel::Fan { sector: j }
                }
            };
            level1.push(LabeledArc { start, end, label });
        }

        // Number the branch arcs of each sector counterclockwise from tau-.
        for (_, arcs) in branch_arcs.iter_mut() {
            arcs.sort_by(|&a, &b| {
                tau_minus
                    .ccw_distance(&level1[a].start)
                    .cmp(&tau_minus.ccw_distance(&level1[b].start))
            });
            assert_eq!(arcs.len(), d as usize - 1, "d - 1 branch arcs per sector");
            for (rank, &arc_index) in arcs.iter().enumerate() {
                if let ArcLabel::Branch { ref mut branch, .. } = level1[arc_index].label {
                    *branch = rank + 1;
                }
            }
        }
        let central = level1.iter().filter(|a| a.label == ArcLabel::Critical).count();
        assert_eq!(central, d as usize, "d central arcs");
        assert!(fan_seen[1..].iter().all(|&s| s), "every sector has its fan arc");

        Ok(ArcModel {
            rotation_set: rotation_set.clone(),
            level0,
            level1,
            gap: (tau_minus, tau_plus),
        })
    }

    pub fn rotation_set(&self) -> &RotationSet {
        &self.rotation_set
    }

    pub fn level0_arcs(&self) -> &[SectorArc] {
        &self.level0
    }

    pub fn level1_arcs(&self) -> &[LabeledArc] {
        &self.level1
    }

    /// The widest-gap endpoints `(tau-, tau+)`.
    pub fn gap(&self) -> (&Angle, &Angle) {
        (&self.gap.0, &self.gap.1)
    }

    /// The level-1 arc whose open interior contains `theta`.
    pub fn locate(&self, theta: &Angle) -> Result<&LabeledArc, CircleError> {
        let index = self.level1.partition_point(|arc| arc.start <= *theta);
        let arc = if index == 0 { &self.level1[self.level1.len() - 1] } else { &self.level1[index - 1] };
        if arc.start == *theta {
            return Err(CircleError::BoundaryAngle(theta.clone()));
        }
        Ok(arc)
    }
}

/// Reads off the itinerary of a periodic angle through the arc model,
/// interpreting the angle as the critical value.
///
/// The orbit points falling in the widest gap are the returns; a return in
/// a central arc opens a leg of length `q`, a return in `B_{k,j}` a leg of
/// length `q - j` with branch label `k`. The legs are rotated so the leg of
/// the last central return comes first, matching the convention that the
/// itinerary starts at the critical point.
pub fn arc_itinerary(theta: &Angle, model: &ArcModel) -> Result<Itinerary, CircleError> {
    let d = model.rotation_set().degree();
    let q = model.rotation_set().q();
    let orbit = dmap_orbit(theta, d, ORBIT_STEP_BUDGET)?;
    let period = match orbit.period {
        Some(period) => period,
        None => return Err(CircleError::NotPeriodic(theta.clone())),
    };

    // returns: (time in 1..=period, label), time t standing for d^(t-1)*theta
    let mut returns: Vec<(usize, ArcLabel)> = Vec::new();
    for (index, point) in orbit.orbit.iter().enumerate() {
        let label = model.locate(point)?.label;
        match label {
            ArcLabel::Critical | ArcLabel::Branch { .. } => returns.push((index + 1, label)),
            ArcLabel::Fan { .. } => {}
        }
    }
    let anchor = returns
        .iter()
        .rposition(|(_, label)| *label == ArcLabel::Critical)
        .ok_or_else(|| CircleError::NoCriticalReturn(theta.clone()))?;

    let count = returns.len();
    let mut legs = Vec::with_capacity(count);
    for offset in 0..count {
        let (time, label) = &returns[(anchor + offset) % count];
        let (next_time, _) = &returns[(anchor + offset + 1) % count];
        let steps = (next_time + period - time - 1) % period + 1;
        let leg = match label {
            ArcLabel::Critical => {
                assert_eq!(steps, q as usize, "central returns open full legs");
                Leg { steps: q, branch: 0 }
            }
            ArcLabel::Branch { branch, sector } => {
                assert_eq!(steps, q as usize - sector, "branch returns open shortened legs");
                Leg { steps: q - *sector as u32, branch: *branch as u32 }
            }
            ArcLabel::Fan { .. } => unreachable!("fan arcs are not returns"),
        };
        legs.push(leg);
    }
    Itinerary::new(d, q, legs)
}
