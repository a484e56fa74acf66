//! Coefficientwise checks of the generating-function identities.
//!
//! Identities with denominators are cleared to polynomial form first, so
//! no power series is ever divided:
//!
//! | id               | checked form                                              |
//! |------------------|-----------------------------------------------------------|
//! | `as_functional`  | `U = x (1 + αU)(1 + tU)`                                  |
//! | `cy_relation`    | `V (1 - αt U²) = U`                                       |
//! | `pe_ode`         | `H_Pe' = (1 + α H_Pe)(1 + t H_Pe)`                        |
//! | `st_ode`         | `H_St' = H_St (α + t + αt H_Pe)`                          |
//! | `as_closed_form` | `H(As^n) = 1/(n+1) Σ_(i+j=n) C(n+1,i) C(n+1,j) α^i t^j`   |
//! | `pe_closed_form` | `H_Pe (α e^(tx) - t e^(αx)) = e^(αx) - e^(tx)`            |

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use super::series::{series, GradedSeries, Normalization, Poly, SeriesName};
use super::{binomial, FamilyError, MAX_SERIES_ORDER};
use crate::face_polynomials::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    AsFunctional,
    CyRelation,
    PeOde,
    StOde,
    AsClosedForm,
    PeClosedForm,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::AsFunctional,
        IdentityId::CyRelation,
        IdentityId::PeOde,
        IdentityId::StOde,
        IdentityId::AsClosedForm,
        IdentityId::PeClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::AsFunctional => "as_functional",
            IdentityId::CyRelation => "cy_relation",
            IdentityId::PeOde => "pe_ode",
            IdentityId::StOde => "st_ode",
            IdentityId::AsClosedForm => "as_closed_form",
            IdentityId::PeClosedForm => "pe_closed_form",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| FamilyError::UnknownIdentity(s.to_string()))
    }
}

/// Outcome of an identity check. A failure is data, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub order: usize,
    pub verified: bool,
    /// Lowest power of `x` at which the two sides disagree.
    pub first_failure: Option<usize>,
}

impl IdentityReport {
    fn new(id: IdentityId, order: usize, first_failure: Option<usize>) -> Self {
        IdentityReport {
            id,
            order,
            verified: first_failure.is_none(),
            first_failure,
        }
    }

    pub fn summary(&self) -> String {
        match self.first_failure {
            None => format!("{}: verified to order {}", self.id, self.order),
            Some(k) => format!("{}: fails at order {k}", self.id),
        }
    }
}

/// Checks `id` modulo `x^(order+1)` against series built from the family
/// recurrences.
pub fn check_identity(id: IdentityId, order: usize) -> Result<IdentityReport, FamilyError> {
    if order > MAX_SERIES_ORDER {
        return Err(FamilyError::OrderTooLarge(order));
    }
    // ODEs lose one order to the derivative, so build one extra term.
    let report = match id {
        IdentityId::AsFunctional => check_as_functional(&series(SeriesName::U, order)?),
        IdentityId::CyRelation => {
            check_cy_relation(&series(SeriesName::U, order)?, &series(SeriesName::V, order)?)
        }
        IdentityId::PeOde => check_pe_ode(&series(SeriesName::Pe, order + 1)?),
        IdentityId::StOde => check_st_ode(
            &series(SeriesName::St, order + 1)?,
            &series(SeriesName::Pe, order + 1)?,
        ),
        IdentityId::AsClosedForm => check_as_closed_form(&series(SeriesName::As, order)?),
        IdentityId::PeClosedForm => check_pe_closed_form(&series(SeriesName::Pe, order)?),
    };
    Ok(report)
}

fn one(normalization: Normalization, order: usize) -> GradedSeries {
    GradedSeries::constant(normalization, order, Poly::one())
}

/// `U = x (1 + αU)(1 + tU)`.
pub fn check_as_functional(u: &GradedSeries) -> IdentityReport {
    let order = u.order();
    let unit = one(Normalization::Ordinary, order);
    let rhs = unit
        .add(&u.scale(&Poly::alpha()))
        .mul(&unit.add(&u.scale(&Poly::t())))
        .mul_x();
    IdentityReport::new(IdentityId::AsFunctional, order, u.first_difference(&rhs))
}

/// `V (1 - αt U²) = U`.
pub fn check_cy_relation(u: &GradedSeries, v: &GradedSeries) -> IdentityReport {
    let order = u.order().min(v.order());
    let alpha_t = &Poly::alpha() * &Poly::t();
    let lhs = v.mul(&one(Normalization::Ordinary, order).sub(&u.mul(u).scale(&alpha_t)));
    IdentityReport::new(IdentityId::CyRelation, order, lhs.first_difference(u))
}

/// `H' = (1 + αH)(1 + tH)` for the exponential permutohedron series.
pub fn check_pe_ode(h_pe: &GradedSeries) -> IdentityReport {
    let order = h_pe.order();
    let unit = one(Normalization::Exponential, order);
    let rhs = unit
        .add(&h_pe.scale(&Poly::alpha()))
        .mul(&unit.add(&h_pe.scale(&Poly::t())));
    let lhs = h_pe.derivative();
    IdentityReport::new(IdentityId::PeOde, lhs.order(), lhs.first_difference(&rhs))
}

/// `H_St' = H_St (α + t + αt H_Pe)`, with `H_Pe = Σ H(Pe^n) x^(n+1)/(n+1)!`.
///
/// This is the form equivalent to the stellohedron recurrence; an extra
/// factor `x` in front of `H_Pe` already breaks the `x^1` coefficient.
pub fn check_st_ode(h_st: &GradedSeries, h_pe: &GradedSeries) -> IdentityReport {
    let order = h_st.order().min(h_pe.order());
    let alpha_t = &Poly::alpha() * &Poly::t();
    let factor = GradedSeries::constant(Normalization::Exponential, order, &Poly::alpha() + &Poly::t())
        .add(&h_pe.scale(&alpha_t));
    let rhs = h_st.mul(&factor);
    let lhs = h_st.truncate(order).derivative();
    IdentityReport::new(IdentityId::StOde, lhs.order(), lhs.first_difference(&rhs))
}

/// `H_Pe (α e^(tx) - t e^(αx)) = e^(αx) - e^(tx)`.
pub fn check_pe_closed_form(h_pe: &GradedSeries) -> IdentityReport {
    let order = h_pe.order();
    let e_alpha = GradedSeries::exp_of(order, &Poly::alpha());
    let e_t = GradedSeries::exp_of(order, &Poly::t());
    let denominator = e_t.scale(&Poly::alpha()).sub(&e_alpha.scale(&Poly::t()));
    let lhs = h_pe.mul(&denominator);
    let rhs = e_alpha.sub(&e_t);
    IdentityReport::new(IdentityId::PeClosedForm, order, lhs.first_difference(&rhs))
}

/// `(n+1) H(As^n) = Σ_(i+j=n) C(n+1, i) C(n+1, j) α^i t^j`, checked after
/// clearing the denominator; the division itself must also be exact.
pub fn check_as_closed_form(h_as: &GradedSeries) -> IdentityReport {
    let order = h_as.order();
    let first_failure = (0..=order).find(|&n| {
        let mut lagrange = Poly::zero();
        for i in 0..=n {
            let j = n - i;
            lagrange.add_term([i as u32, j as u32, 0], binomial(n + 1, i) * binomial(n + 1, j));
        }
        let exact = lagrange
            .terms()
            .all(|(_, c)| c.is_multiple_of(&Int::from(n + 1)));
        !exact || h_as.coeffs[n].scale(&Int::from(n + 1)) != lagrange
    });
    IdentityReport::new(IdentityId::AsClosedForm, order, first_failure)
}
