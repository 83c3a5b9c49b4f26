//! Densities with their fluxes, higher densities, and multipliers, instantiated
//! at exact coefficients.

use num_traits::Zero;
use serde::Serialize;

use crate::exact::{rat, ComplexRational, Rational};
use crate::jet::ComplexJetPoly;
use crate::model::Coefficients;

type C = ComplexJetPoly;

fn u(k: usize) -> C {
    C::u(k)
}

fn ub(k: usize) -> C {
    C::ubar(k)
}

fn k(c: &ComplexRational) -> C {
    C::constant(c)
}

fn q(n: i64, d: i64) -> C {
    C::constant(&ComplexRational::real(rat(n, d)))
}

fn i() -> C {
    C::i()
}

fn mul(fs: &[C]) -> C {
    fs.iter().skip(1).fold(fs[0].clone(), |acc, f| &acc * f)
}

fn sum(fs: &[C]) -> C {
    fs.iter().fold(C::zero(), |acc, f| &acc + f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Density,
    Multiplier,
}

/// Pairs a density with its multiplier: `variational_link(density) = factor · multiplier`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Link {
    pub density: &'static str,
    pub multiplier: &'static str,
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub factor: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    /// Real densities have a zero imaginary part; `Mtilde` and `Ptilde` are complex.
    pub body: ComplexJetPoly,
    pub flux: Option<ComplexJetPoly>,
    pub condition: &'static str,
    pub admissible: bool,
    /// Order of the Helmholtz system that applies (multipliers only).
    pub helmholtz_order: Option<usize>,
}

struct Conditions {
    im_equal: bool,
    both_real: bool,
    mass: bool,
    mom: bool,
    twist: bool,
    a2_b1_b2: bool,
    a2_b2: bool,
    sasa: bool,
}

impl Conditions {
    fn of(c: &Coefficients) -> Self {
        let (a, b) = (&c.alpha, &c.beta);
        let mass = *a == b.scale(&rat(2, 1));
        let mom = *a == b.scale(&rat(3, 1));
        Conditions {
            im_equal: a.im == b.im,
            both_real: a.is_real() && b.is_real(),
            mass,
            mom,
            twist: a.is_real() && b.is_zero(),
            a2_b1_b2: a.im.is_zero() && b.is_zero(),
            a2_b2: a.im.is_zero() && b.im.is_zero(),
            sasa: mom && a.is_real() && b.is_real(),
        }
    }
}

/// `½(α + β̄)`: equals `½(α1 + β1)` whenever `Im α = Im β`.
fn momentum_flux(c: &Coefficients) -> C {
    let (a, b) = (&c.alpha, &c.beta);
    let half = (a + &b.conj()).scale(&rat(1, 2));
    sum(&[
        mul(&[k(&half), u(0), u(0), ub(0), ub(0)]),
        -mul(&[u(1), ub(1)]),
        mul(&[u(0), ub(2)]),
        mul(&[ub(0), u(2)]),
    ])
}

fn energy_density(c: &Coefficients) -> C {
    let s = c.sum().scale(&rat(1, 2));
    sum(&[mul(&[q(-3, 1), u(1), ub(1)]), mul(&[k(&s), u(0), u(0), ub(0), ub(0)])])
}

/// Energy flux with `−mix·(ū²u_x² + u²ū_x²)`; conserved for `mix = ½(α + 4β)`.
fn energy_flux_with(c: &Coefficients, mix: &ComplexRational) -> C {
    let (a, b) = (&c.alpha, &c.beta);
    let s = c.sum();
    let five_two = &a.scale(&rat(5, 1)) + &b.scale(&rat(2, 1));
    let third_s2 = (&s * &s).scale(&rat(1, 3));
    let third_order = mul(&[q(3, 1), sum(&[mul(&[u(2), ub(2)]), -mul(&[ub(1), u(3)]), -mul(&[u(1), ub(3)])])]);
    let rest = sum(&[
        mul(&[k(&s), sum(&[mul(&[u(0), ub(0), ub(0), u(2)]), mul(&[u(0), u(0), ub(0), ub(2)])])]),
        -mul(&[k(&five_two), u(0), ub(0), u(1), ub(1)]),
        -mul(&[k(mix), sum(&[mul(&[ub(0), ub(0), u(1), u(1)]), mul(&[u(0), u(0), ub(1), ub(1)])])]),
        mul(&[k(&third_s2), u(0).pow(3), ub(0).pow(3)]),
    ]);
    &third_order + &rest
}

fn energy_flux(c: &Coefficients) -> C {
    energy_flux_with(c, &(&c.alpha + &c.beta.scale(&rat(4, 1))).scale(&rat(1, 2)))
}

fn galilean_density(c: &Coefficients) -> C {
    &mul(&[C::t(), energy_density(c)]) - &mul(&[C::x(), u(0), ub(0)])
}

fn galilean_flux_with(c: &Coefficients, energy: C) -> C {
    let s = c.sum().scale(&rat(1, 2));
    sum(&[
        mul(&[u(0), ub(1)]),
        mul(&[ub(0), u(1)]),
        mul(&[C::x(), sum(&[mul(&[u(1), ub(1)]), -mul(&[ub(0), u(2)]), -mul(&[u(0), ub(2)])])]),
        -mul(&[C::x(), k(&s), u(0), u(0), ub(0), ub(0)]),
        mul(&[C::t(), energy]),
    ])
}

fn galilean_flux(c: &Coefficients) -> C {
    galilean_flux_with(c, energy_flux(c))
}

fn covmass_flux(c: &Coefficients) -> C {
    &mul(&[k(&c.beta), u(0), u(0), ub(0)]) + &u(2)
}

fn covmom_flux(c: &Coefficients) -> C {
    sum(&[
        mul(&[k(&c.beta.scale(&rat(2, 1))), u(0).pow(3), ub(0)]),
        -mul(&[u(1), u(1)]),
        mul(&[q(2, 1), u(0), u(2)]),
    ])
}

fn twist_density() -> C {
    mul(&[i(), &mul(&[u(1), ub(0)]) - &mul(&[ub(1), u(0)])])
}

fn twist_flux(c: &Coefficients) -> C {
    sum(&[
        mul(&[k(&c.alpha), i(), &mul(&[ub(0), ub(0), u(0), u(1)]) - &mul(&[ub(0), u(0), u(0), ub(1)])]),
        mul(&[i(), ub(0), u(3)]),
        -mul(&[i(), u(0), ub(3)]),
        mul(&[q(2, 1), i(), &mul(&[u(1), ub(2)]) - &mul(&[ub(1), u(2)])]),
    ])
}

/// Real and imaginary parts of a complex density/flux pair as two real pairs.
fn split(t: &C, x: &C) -> [(C, C); 2] {
    let re = |p: &C| C::real(p.re.clone());
    let im = |p: &C| C::real(p.im.clone());
    [(re(t), re(x)), (im(t), im(x))]
}

/// Coefficient of `i(uū²u_x − u²ūū_x)` in the first higher density.
fn h1_twist_coefficient(c: &Coefficients) -> ComplexRational {
    c.alpha.scale(&rat(1, 4))
}

fn h1_density_with(gamma: &ComplexRational) -> C {
    sum(&[
        mul(&[q(1, 2), i(), &mul(&[ub(2), u(1)]) - &mul(&[u(2), ub(1)])]),
        mul(&[k(gamma), i(), &mul(&[u(0), ub(0), ub(0), u(1)]) - &mul(&[u(0), u(0), ub(0), ub(1)])]),
    ])
}

fn h2_density(c: &Coefficients) -> C {
    let a = &c.alpha;
    let ka = |n: i64, d: i64| k(&a.scale(&rat(n, d)));
    let a2 = k(&(a * a).scale(&rat(1, 3)));
    let s = &u(0) + &ub(0);
    let d = &u(0) - &ub(0);
    sum(&[
        mul(&[q(6, 1), u(2), ub(2)]),
        mul(&[ka(-1, 4), s, d.clone(), d, &u(2) + &ub(2)]),
        mul(&[
            ka(1, 4),
            sum(&[mul(&[q(2, 1), u(0), ub(0)]), mul(&[q(-3, 1), u(0), u(0)]), mul(&[q(-3, 1), ub(0), ub(0)])]),
            &mul(&[u(1), u(1)]) + &mul(&[ub(1), ub(1)]),
        ]),
        mul(&[
            ka(-1, 2),
            sum(&[mul(&[u(0), u(0)]), mul(&[q(14, 1), u(0), ub(0)]), mul(&[ub(0), ub(0)])]),
            u(1),
            ub(1),
        ]),
        mul(&[a2, u(0).pow(3), ub(0).pow(3)]),
    ])
}

fn h3_density(c: &Coefficients) -> C {
    h3_density_with(c, &rat(8, 3))
}

/// Third higher density with sextic term `sextic·β²u³ū³`; conserved for `sextic = 8/3`.
fn h3_density_with(c: &Coefficients, sextic: &Rational) -> C {
    let b = &c.beta;
    let kb = |n: i64, d: i64| k(&b.scale(&rat(n, d)));
    let b2 = k(&(b * b).scale(sextic));
    let s = &u(0) + &ub(0);
    let d = &u(0) - &ub(0);
    sum(&[
        mul(&[q(3, 1), u(2), ub(2)]),
        mul(&[kb(-3, 4), s, d.clone(), d, &u(2) + &ub(2)]),
        mul(&[
            kb(-1, 12),
            sum(&[mul(&[q(27, 1), u(0), u(0)]), mul(&[q(-18, 1), u(0), ub(0)]), mul(&[q(27, 1), ub(0), ub(0)])]),
            &mul(&[u(1), u(1)]) + &mul(&[ub(1), ub(1)]),
        ]),
        mul(&[
            kb(-1, 2),
            sum(&[mul(&[q(22, 1), u(0), ub(0)]), mul(&[q(3, 1), u(0), u(0)]), mul(&[q(3, 1), ub(0), ub(0)])]),
            u(1),
            ub(1),
        ]),
        mul(&[b2, u(0).pow(3), ub(0).pow(3)]),
    ])
}

fn multiplier_bodies(c: &Coefficients) -> Vec<(&'static str, C)> {
    let a1 = ComplexRational::real(c.alpha.re.clone());
    let s1 = ComplexRational::real(&c.alpha.re + &c.beta.re);
    let b1 = ComplexRational::real(c.beta.re.clone());
    let q7 = &mul(&[q(3, 1), u(2)]) + &mul(&[k(&s1), u(0), u(0), ub(0)]);
    vec![
        ("M1", C::int(1)),
        ("M2", i()),
        ("M3", u(0)),
        ("M4", mul(&[i(), ub(0)])),
        ("M5", ub(0)),
        ("M6", mul(&[i(), u(1)])),
        ("M7", q7.clone()),
        ("M8", &mul(&[C::t(), q7]) - &mul(&[C::x(), u(0)])),
        ("M9", mul(&[i(), &u(3) + &mul(&[k(&a1), u(0), ub(0), u(1)])])),
        (
            "M10",
            sum(&[
                mul(&[q(6, 1), u(4)]),
                mul(&[k(&a1.scale(&rat(2, 1))), u(0), u(0), ub(2)]),
                mul(&[k(&a1.scale(&rat(8, 1))), u(0), ub(0), u(2)]),
                mul(&[k(&a1.scale(&rat(6, 1))), ub(0), u(1), u(1)]),
                mul(&[k(&a1.scale(&rat(4, 1))), u(0), u(1), ub(1)]),
                mul(&[k(&(&a1 * &a1)), u(0).pow(3), ub(0).pow(2)]),
            ]),
        ),
        (
            "M11",
            sum(&[
                mul(&[q(3, 1), u(4)]),
                mul(&[k(&b1.scale(&rat(6, 1))), u(0), u(0), ub(2)]),
                mul(&[k(&b1.scale(&rat(14, 1))), u(0), ub(0), u(2)]),
                mul(&[k(&b1.scale(&rat(8, 1))), ub(0), u(1), u(1)]),
                mul(&[k(&b1.scale(&rat(12, 1))), u(0), ub(1), u(1)]),
                mul(&[k(&(&b1 * &b1).scale(&rat(8, 1))), u(0).pow(3), ub(0).pow(2)]),
            ]),
        ),
    ]
}

/// Every entry with its admissibility at `c`, in a fixed order.
pub fn catalog_all(c: &Coefficients) -> Vec<CatalogEntry> {
    let w = Conditions::of(c);
    let dens = |id, body: C, flux: Option<C>, condition, admissible| CatalogEntry {
        id,
        kind: EntryKind::Density,
        body,
        flux,
        condition,
        admissible,
        helmholtz_order: None,
    };
    let [(t4, x4), (t5, x5)] = split(&u(0), &covmass_flux(c));
    let [(t6, x6), (t7, x7)] = split(&mul(&[u(0), u(0)]), &covmom_flux(c));
    let two = q(2, 1);
    let mut out = vec![
        dens("T1", mul(&[u(0), ub(0)]), Some(momentum_flux(c)), "Im α = Im β", w.im_equal),
        dens("T2", energy_density(c), Some(energy_flux(c)), "Im α = 0, Im β = 0", w.both_real),
        dens("T3", galilean_density(c), Some(galilean_flux(c)), "Im α = 0, Im β = 0", w.both_real),
        dens("T4", &two * &t4, Some(&two * &x4), "α = 2β", w.mass),
        dens("T5", &two * &t5, Some(&two * &x5), "α = 2β", w.mass),
        dens("T6", t6, Some(x6), "α = 3β", w.mom),
        dens("T7", t7, Some(x7), "α = 3β", w.mom),
        dens("T8", twist_density(), Some(twist_flux(c)), "Im α = 0, β = 0", w.twist),
        dens("Mtilde", u(0), Some(covmass_flux(c)), "α = 2β", w.mass),
        dens("Ptilde", mul(&[u(0), u(0)]), Some(covmom_flux(c)), "α = 3β", w.mom),
        dens("H1", h1_density_with(&h1_twist_coefficient(c)), None, "Im α = 0, β = 0", w.twist),
        dens("H2", h2_density(c), None, "Im α = 0, β = 0", w.twist),
        dens("H3", h3_density(c), None, "α = 3β, Im α = Im β = 0", w.sasa),
    ];
    let conds: [(&str, bool); 11] = [
        ("α1 = 2β1, α2 = 2β2", w.mass),
        ("α1 = 2β1, α2 = 2β2", w.mass),
        ("α2 = β2", w.im_equal),
        ("α1 = 3β1, α2 = 3β2", w.mom),
        ("α1 = 3β1, α2 = 3β2", w.mom),
        ("α2 = β1 = β2 = 0", w.a2_b1_b2),
        ("α2 = β2 = 0", w.a2_b2),
        ("α2 = β2 = 0", w.a2_b2),
        ("α2 = β1 = β2 = 0", w.a2_b1_b2),
        ("α2 = β1 = β2 = 0", w.a2_b1_b2),
        ("α1 = 3β1, α2 = β2 = 0", w.sasa),
    ];
    for (n, ((id, body), (condition, admissible))) in multiplier_bodies(c).into_iter().zip(conds).enumerate() {
        out.push(CatalogEntry {
            id,
            kind: EntryKind::Multiplier,
            body,
            flux: None,
            condition,
            admissible,
            helmholtz_order: Some(if n < 8 { 2 } else { 4 }),
        });
    }
    out
}

/// The admissible entries at `c`.
pub fn catalog(c: &Coefficients) -> Vec<CatalogEntry> {
    catalog_all(c).into_iter().filter(|e| e.admissible).collect()
}

pub fn entry(c: &Coefficients, id: &str) -> Option<CatalogEntry> {
    catalog_all(c).into_iter().find(|e| e.id == id)
}

/// Density ↔ multiplier pairs with `variational_link(T) = factor · Q`.
pub fn links() -> Vec<Link> {
    let l = |density, multiplier, n: i64, d: i64| Link { density, multiplier, factor: rat(n, d) };
    vec![
        l("T1", "M3", 2, 1),
        l("T2", "M7", 2, 1),
        l("T3", "M8", 2, 1),
        l("T4", "M1", 2, 1),
        l("T5", "M2", 2, 1),
        l("T6", "M5", 2, 1),
        l("T7", "M4", 2, 1),
        l("T8", "M6", 4, 1),
        l("H1", "M9", 2, 1),
        l("H2", "M10", 2, 1),
        l("H3", "M11", 2, 1),
    ]
}

/// Forms whose coefficients differ from the conserved ones in the catalog; each fails
/// its conservation check.
pub mod literal {
    use super::*;

    /// Quartic term `6α·i(uū²u_x − u²ūū_x)` instead of `α/4`.
    pub fn h1_density(c: &Coefficients) -> C {
        h1_density_with(&c.alpha.scale(&rat(6, 1)))
    }

    /// Sextic term `(4/3)β²u³ū³` instead of `8/3`.
    pub fn h3_density(c: &Coefficients) -> C {
        h3_density_with(c, &rat(4, 3))
    }

    /// Mixed term `−½(α + 2β)(ū²u_x² + u²ū_x²)` instead of `½(α + 4β)`.
    pub fn energy_flux(c: &Coefficients) -> C {
        energy_flux_with(c, &(&c.alpha + &c.beta.scale(&rat(2, 1))).scale(&rat(1, 2)))
    }

    pub fn galilean_flux(c: &Coefficients) -> C {
        galilean_flux_with(c, energy_flux(c))
    }

    /// `½(α + β)u²ū²` as the quartic term; complex when `Im α = Im β ≠ 0`.
    pub fn momentum_flux(c: &Coefficients) -> C {
        let half = c.sum().scale(&rat(1, 2));
        let fix = &k(&half) - &k(&(&c.alpha + &c.beta.conj()).scale(&rat(1, 2)));
        &super::momentum_flux(c) + &mul(&[fix, u(0), u(0), ub(0), ub(0)])
    }
}
