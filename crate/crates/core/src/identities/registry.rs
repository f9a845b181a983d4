//! Named families of identity instances, enumerable by id.

use dashu_ratio::RBig;

use super::*;
use crate::rational::{int, ratio};

/// Parameter bounds for building instances. `None` means the family default.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ranges {
    pub p_max: Option<u32>,
    pub q_max: Option<u32>,
    pub w_max: Option<u32>,
    pub lambdas: Option<Vec<RBig>>,
    pub seed: u64,
}

/// Which bound of [`Ranges`] a family's main parameter follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    P,
    W,
    Fixed,
}

type Builder = fn(u32, &Ranges) -> Result<Vec<IdentityInstance>, IdentityError>;

pub struct Family {
    pub id: &'static str,
    pub summary: &'static str,
    /// Expensive to evaluate; kept to small defaults.
    pub heavy: bool,
    /// Included when the suite list says "all".
    pub in_all: bool,
    pub bound: Bound,
    pub default_max: u32,
    build: Builder,
}

impl Family {
    pub fn max_for(&self, r: &Ranges) -> u32 {
        match self.bound {
            Bound::P => r.p_max.unwrap_or(self.default_max),
            Bound::W => r.w_max.unwrap_or(self.default_max),
            Bound::Fixed => self.default_max,
        }
    }

    pub fn instances(&self, r: &Ranges) -> Result<Vec<IdentityInstance>, IdentityError> {
        (self.build)(self.max_for(r), r)
    }
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family").field("id", &self.id).field("default_max", &self.default_max).finish()
    }
}

pub const DEFAULT_Q_MAX: u32 = 2;
pub const REFLECTION_SAMPLES: usize = 20;

pub fn default_lambdas() -> Vec<RBig> {
    vec![int(0), int(1), int(-1), int(-2), ratio(3, 2)]
}

fn lambdas(r: &Ranges) -> Vec<RBig> {
    r.lambdas.clone().unwrap_or_else(default_lambdas)
}

fn per_p<F>(max: u32, f: F) -> Result<Vec<IdentityInstance>, IdentityError>
where
    F: Fn(u32) -> Result<Vec<IdentityInstance>, IdentityError>,
{
    let mut out = Vec::new();
    for p in 0..=max {
        out.extend(f(p)?);
    }
    Ok(out)
}

fn pairs_up_to(total: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=total).flat_map(|t| (0..=t).map(move |m| (m, t - m)))
}

static FAMILIES: &[Family] = &[
    Family {
        id: "main-theorem",
        summary: "((p+1)(p+2)/2) z(p+4) as the four weighted composition sums",
        heavy: true,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| per_p(max, |p| Ok(vec![main_theorem(p)])),
    },
    Family {
        id: "main-theorem-symbolic",
        summary: "main theorem right side equals J(3)+...+J(6) coefficientwise",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 6,
        build: |max, _| per_p(max, |p| Ok(vec![main_theorem_symbolic(p)?])),
    },
    Family {
        id: "j-decomp",
        summary: "simplex decomposition of J_p: total, J(1)+J(2), J(3)+...+J(6)",
        heavy: true,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| per_p(max, j_decomposition),
    },
    Family {
        id: "j-closed",
        summary: "J(1) and J(2) against their closed forms",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 5,
        build: |max, _| per_p(max, j_closed_pairs),
    },
    Family {
        id: "j-convolution",
        summary: "J_p as the convolution of Z- and Z*+ against its closed form",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 5,
        build: |max, _| per_p(max, |p| Ok(vec![j_convolution_pair(p)])),
    },
    Family {
        id: "j1-star",
        summary: "J(1) through the zeta-star double sum",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 5,
        build: |max, _| per_p(max, |p| Ok(vec![j1_star_pair(p)?])),
    },
    Family {
        id: "j2-reflection",
        summary: "J(2) through the reflection formula and J_p",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 5,
        build: |max, _| per_p(max, |p| Ok(vec![j2_reflection_pair(p)?])),
    },
    Family {
        id: "star-double-sum",
        summary: "sum of zs(a+2,{1}^m,b+2) over a+b+m=p",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| per_p(max, |p| Ok(vec![star_double_sum_pair(p)?])),
    },
    Family {
        id: "granville",
        summary: "sum formula over compositions, q+r <= max",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 6,
        build: |max, _| Ok(pairs_up_to(max).map(|(q, r)| granville_pair(q, r)).collect()),
    },
    Family {
        id: "le-murakami",
        summary: "alternating height-one sum equals 2 z(-2w)",
        heavy: false,
        in_all: true,
        bound: Bound::W,
        default_max: 4,
        build: |max, _| (1..=max).map(le_murakami_pair).collect(),
    },
    Family {
        id: "prop22",
        summary: "Z-(m): vanishing for odd m, closed form for even m",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| per_p(max, |m| Ok(prop22_instances(m))),
    },
    Family {
        id: "ohno-zstar",
        summary: "Z*+(w-2) = 2(w-1)(1-2^(1-w)) z(w)",
        heavy: false,
        in_all: true,
        bound: Bound::W,
        default_max: 12,
        build: |max, _| (2..=max).map(ohno_pair).collect(),
    },
    Family {
        id: "zstar3-2n",
        summary: "zs(3,{2}^n) through Z*+ and products",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 3,
        build: |max, _| per_p(max, |n| Ok(vec![zeta_star_3_2n_pair(n)])),
    },
    Family {
        id: "zstar3-2n-plain-twos",
        summary: "zs(3,{2}^n) with plain z({2}^a) factors; fails from n = 2",
        heavy: false,
        in_all: false,
        bound: Bound::P,
        default_max: 3,
        build: |max, _| per_p(max, |n| Ok(vec![zeta_star_3_2n_plain_twos(n)])),
    },
    Family {
        id: "bell-zeta",
        summary: "Bell polynomials at signed even zeta values give z({2}^n) and zs({2}^n)",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| {
            let mut out = Vec::new();
            for n in 1..=max {
                out.push(bell_zeta_pair(n, false)?);
                out.push(bell_zeta_pair(n, true)?);
            }
            Ok(out)
        },
    },
    Family {
        id: "bell-harmonic",
        summary: "Bell polynomials at truncated power sums, exact, k1 <= k2 <= 8",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 5,
        build: |max, _| {
            let mut out = Vec::new();
            for k1 in 1..=8 {
                for k2 in k1..=8 {
                    for n in 0..=max {
                        out.push(bell_harmonic_pair(k1, k2, n)?);
                    }
                }
            }
            Ok(out)
        },
    },
    Family {
        id: "reflection",
        summary: "reflection formula on random exponent lists (depth <= 4, weight <= 10)",
        heavy: false,
        in_all: true,
        bound: Bound::Fixed,
        default_max: 0,
        build: |_, r| reflection_sample(r.seed, REFLECTION_SAMPLES).iter().map(|a| reflection_pair(a)).collect(),
    },
    Family {
        id: "sec6",
        summary: "weighted depth-two sum formula with products z(m+2) z(n+2)",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 6,
        build: |max, _| per_p(max, |p| Ok(vec![sec6_pair(p)])),
    },
    Family {
        id: "sec6-dual",
        summary: "dual-pair sums against both sides of the same formula",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| per_p(max, |p| Ok(sec6_dual_route(p))),
    },
    Family {
        id: "sec6-star",
        summary: "zs({1}^m,2) = (m+1) z(m+2)",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 6,
        build: |max, _| per_p(max, |m| Ok(vec![sec6_star_height1(m)])),
    },
    Family {
        id: "sec7-t",
        summary: "sum of T(m,n) over m+n=p equals J(3)",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 4,
        build: |max, _| per_p(max, |p| Ok(vec![t_sum_pair(p)?])),
    },
    Family {
        id: "sec7-dual",
        summary: "sum of zs(a1,{1}^m,a2+1) = (m+n+3) z(m+n+4), m+n <= max",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 5,
        build: |max, _| Ok(pairs_up_to(max).map(|(m, n)| star_height1_dual_sum(m, n)).collect()),
    },
    Family {
        id: "sec7-unknown",
        summary: "values of the 2^(a2)-weighted star sum, no identity asserted",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 3,
        build: |max, _| {
            Ok(pairs_up_to(max)
                .map(|(m, n)| {
                    IdentityInstance::exploration(
                        "sec7-unknown",
                        Params::new().int("m", m).int("n", n),
                        unknown_weighted_sum(m, n),
                    )
                })
                .collect())
        },
    },
    Family {
        id: "euler-family",
        summary: "lambda-weighted alternating double sums, q-th derivative",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 8,
        build: |max, r| {
            let q_max = r.q_max.unwrap_or(DEFAULT_Q_MAX);
            let mut out = Vec::new();
            for lambda in lambdas(r) {
                for p in 0..=max {
                    for q in 0..=q_max.min(p) {
                        out.push(euler_family(p, q, &lambda)?);
                    }
                }
            }
            Ok(out)
        },
    },
    Family {
        id: "euler-special",
        summary: "every displayed specialisation of the lambda family",
        heavy: false,
        in_all: true,
        bound: Bound::P,
        default_max: 8,
        build: |max, r| {
            let q_max = r.q_max.unwrap_or(DEFAULT_Q_MAX);
            let zero = int(0);
            let lambdas = lambdas(r);
            let mut out = Vec::new();
            for kind in EULER_SPECIALS {
                for p in kind.min_p()..=max {
                    let qs: Vec<u32> = match (kind.uses_q(), kind) {
                        (false, _) => vec![0],
                        (true, EulerSpecial::AStuffle) => (0..=q_max).collect(),
                        (true, _) => (0..=q_max.min(p)).collect(),
                    };
                    let ls: &[RBig] = if kind.uses_lambda() { &lambdas } else { std::slice::from_ref(&zero) };
                    for &q in &qs {
                        for l in ls {
                            out.push(euler_special(kind, p, q, l)?);
                        }
                    }
                }
            }
            Ok(out)
        },
    },
];

pub fn families() -> &'static [Family] {
    FAMILIES
}

/// Look a family up by id. `euler-special:<name>` selects one special form.
pub fn family(id: &str) -> Option<&'static Family> {
    FAMILIES.iter().find(|f| f.id == id)
}

/// Instances of one family or of a single special form (`euler-special:<name>`).
pub fn instances_for(id: &str, r: &Ranges) -> Option<Result<Vec<IdentityInstance>, IdentityError>> {
    if let Some(f) = family(id) {
        return Some(f.instances(r));
    }
    let name = id.strip_prefix("euler-special:")?;
    EulerSpecial::from_name(name)?;
    let all = family("euler-special")?.instances(r);
    Some(all.map(|v| v.into_iter().filter(|i| i.id == id).collect()))
}
