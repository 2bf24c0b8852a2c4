//! Kodaira fiber classification from vanishing orders of (c₄, c₆, Δ) in
//! residue characteristic zero, and the per-surface singular-fiber census.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{SurfaceError, WeierstrassSurface};
use crate::arith::rational::Rational;
use crate::poly::roots::rational_roots;
use crate::poly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodairaType {
    Smooth,
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn euler_number(&self) -> u32 {
        match self {
            KodairaType::Smooth => 0,
            KodairaType::I(n) => *n,
            KodairaType::IStar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            KodairaType::Smooth => "smooth".into(),
            KodairaType::I(n) => format!("I{n}"),
            KodairaType::IStar(n) => format!("I{n}*"),
            KodairaType::II => "II".into(),
            KodairaType::III => "III".into(),
            KodairaType::IV => "IV".into(),
            KodairaType::IVStar => "IV*".into(),
            KodairaType::IIIStar => "III*".into(),
            KodairaType::IIStar => "II*".into(),
        }
    }

    pub fn parse(s: &str) -> Option<KodairaType> {
        let s = s.trim();
        match s {
            "smooth" => return Some(KodairaType::Smooth),
            "II" => return Some(KodairaType::II),
            "III" => return Some(KodairaType::III),
            "IV" => return Some(KodairaType::IV),
            "IV*" => return Some(KodairaType::IVStar),
            "III*" => return Some(KodairaType::IIIStar),
            "II*" => return Some(KodairaType::IIStar),
            _ => {}
        }
        let (body, star) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let n = body.strip_prefix('I')?.parse().ok()?;
        Some(if star {
            KodairaType::IStar(n)
        } else {
            KodairaType::I(n)
        })
    }
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A place of the base curve ℙ¹: a rational point or infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum Place {
    Finite(Rational),
    Infinity,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Finite(r) => write!(f, "{r}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Chart weights for (c₄, c₆, Δ) at infinity on a K3 fibration.
const INF_WEIGHTS: (usize, usize, usize) = (8, 12, 24);

fn orders_at(
    c4: &UniPoly,
    c6: &UniPoly,
    delta: &UniPoly,
    place: &Place,
) -> Result<(usize, usize, usize), SurfaceError> {
    let ords = match place {
        Place::Finite(r) => (
            if c4.is_zero() {
                usize::MAX
            } else {
                c4.ord_at(r)
            },
            if c6.is_zero() {
                usize::MAX
            } else {
                c6.ord_at(r)
            },
            delta.ord_at(r),
        ),
        Place::Infinity => {
            let zero = Rational::zero();
            let rev = |f: &UniPoly, w: usize| {
                if f.is_zero() {
                    usize::MAX
                } else {
                    f.reverse_weighted(w).ord_at(&zero)
                }
            };
            (
                rev(c4, INF_WEIGHTS.0),
                rev(c6, INF_WEIGHTS.1),
                rev(delta, INF_WEIGHTS.2),
            )
        }
    };
    Ok(ords)
}

/// Classify the fiber over a place by the Kodaira-Néron table. Minimality is
/// enforced first: while (ord c₄, ord c₆, ord Δ) ≥ (4, 6, 12), shift by the
/// quadratic-twist rescale.
pub fn kodaira_classify(
    surface: &WeierstrassSurface,
    place: &Place,
) -> Result<KodairaType, SurfaceError> {
    let (c4, c6, delta) = surface.c4_c6_delta()?;
    let (a, b, d) = orders_at(&c4, &c6, &delta, place)?;
    classify_orders(a, b, d)
}

fn classify_orders(mut a: usize, mut b: usize, mut d: usize) -> Result<KodairaType, SurfaceError> {
    while a >= 4 && b >= 6 && d >= 12 {
        a -= 4;
        b -= 6;
        d -= 12;
    }
    let t = if d == 0 {
        KodairaType::Smooth
    } else if a == 0 {
        KodairaType::I(d as u32)
    } else if b == 1 && d == 2 {
        KodairaType::II
    } else if a == 1 && d == 3 {
        KodairaType::III
    } else if a >= 2 && b == 2 && d == 4 {
        KodairaType::IV
    } else if a >= 2 && b >= 3 && d == 6 {
        KodairaType::IStar(0)
    } else if a == 2 && b == 3 && d > 6 {
        KodairaType::IStar((d - 6) as u32)
    } else if a >= 3 && b == 4 && d == 8 {
        KodairaType::IVStar
    } else if a == 3 && b >= 5 && d == 9 {
        KodairaType::IIIStar
    } else if a >= 4 && b == 5 && d == 10 {
        KodairaType::IIStar
    } else {
        return Err(SurfaceError::Unclassifiable {
            c4: a,
            c6: b,
            delta: d,
        });
    };
    Ok(t)
}

/// Where a group of fibers sits: a rational place, infinity, or the roots of
/// an irrational factor of the discriminant (one fiber per conjugate root).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PlaceLabel {
    Rational(String),
    Infinity,
    Factor { poly: String, degree: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberRecord {
    pub place: PlaceLabel,
    pub kodaira: String,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberSummary {
    pub surface: String,
    pub fibers: Vec<FiberRecord>,
    pub euler_sum: u32,
    /// Parameter collisions or unresolved factors are reported, never
    /// silently classified.
    pub warnings: Vec<String>,
}

impl FiberSummary {
    /// Multiset of Kodaira symbols with multiplicities.
    pub fn census(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for rec in &self.fibers {
            *out.entry(rec.kodaira.clone()).or_insert(0) += rec.count;
        }
        out
    }
}

/// Factor Δ over ℚ: classify every rational root and ∞ pointwise; group the
/// conjugate roots of each leftover squarefree factor, which must be
/// multiplicative (ord c₄ = 0) to be counted as I_m fibers.
pub fn singular_fiber_summary(surface: &WeierstrassSurface) -> Result<FiberSummary, SurfaceError> {
    let (c4, _c6, delta) = surface.c4_c6_delta()?;
    let mut fibers = vec![];
    let mut warnings = vec![];

    let rational = rational_roots(&delta);
    for (root, _mult) in &rational {
        let t = kodaira_classify(surface, &Place::Finite(root.clone()))?;
        fibers.push(FiberRecord {
            place: PlaceLabel::Rational(root.to_string()),
            kodaira: t.symbol(),
            count: 1,
        });
    }

    // Leftover squarefree factors after removing every rational root.
    for (g, mult) in delta.squarefree_decomposition() {
        let mut g_irr = g.clone();
        for (root, _) in &rational {
            let lin = UniPoly::from_coeffs(vec![-root.clone(), Rational::one()]);
            while g_irr.degree().unwrap_or(0) >= 1 && g_irr.eval(root).is_zero() {
                g_irr = g_irr.div_exact(&lin);
            }
        }
        let deg = g_irr.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if g_irr.gcd(&c4).degree().unwrap_or(0) == 0 {
            fibers.push(FiberRecord {
                place: PlaceLabel::Factor {
                    poly: g_irr.to_display(surface.base_var),
                    degree: deg,
                },
                kodaira: KodairaType::I(mult as u32).symbol(),
                count: deg,
            });
        } else {
            warnings.push(format!(
                "irrational additive locus: factor {} of multiplicity {} shares roots with c4; \
                 fibers there are not classified",
                g_irr.to_display(surface.base_var),
                mult
            ));
        }
    }

    let t_inf = kodaira_classify(surface, &Place::Infinity)?;
    if t_inf != KodairaType::Smooth {
        fibers.push(FiberRecord {
            place: PlaceLabel::Infinity,
            kodaira: t_inf.symbol(),
            count: 1,
        });
    }

    let euler_sum = fibers
        .iter()
        .map(|r| KodairaType::parse(&r.kodaira).map_or(0, |t| t.euler_number()) * r.count as u32)
        .sum();
    if euler_sum != 24 && warnings.is_empty() {
        warnings.push(format!(
            "Euler numbers sum to {euler_sum}, not 24: parameter collision suspected"
        ));
    }
    Ok(FiberSummary {
        surface: surface.id.name().to_string(),
        fibers,
        euler_sum,
        warnings,
    })
}
