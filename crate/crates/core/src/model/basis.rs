//! Product and device bases, labels, and the Clebsch–Gordan change of basis.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::halfint::{HalfInt, SpinQuantum};
use crate::linalg::{clebsch_gordan, OperatorMatrix};

/// `|m1⟩|m2⟩|m3⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductLabel {
    pub m1: HalfInt,
    pub m2: HalfInt,
    pub m3: HalfInt,
}

impl ProductLabel {
    pub fn m_total(&self) -> HalfInt {
        self.m1 + self.m2 + self.m3
    }
}

impl fmt::Display for ProductLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m1:{}|m2:{}|m3:{}",
            self.m1.signed(),
            self.m2.signed(),
            self.m3.signed()
        )
    }
}

/// `|m1⟩|s23, m23⟩`: the mobile spin times the coupled-pair state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeviceLabel {
    pub m1: HalfInt,
    pub s23: HalfInt,
    pub m23: HalfInt,
}

impl DeviceLabel {
    pub fn new(m1: HalfInt, s23: HalfInt, m23: HalfInt) -> Self {
        Self { m1, s23, m23 }
    }

    /// `|↑⟩|s23, m23⟩` for integer pair quantum numbers.
    pub fn up(s23: i32, m23: i32) -> Self {
        Self::new(
            HalfInt::HALF,
            HalfInt::from_int(s23),
            HalfInt::from_int(m23),
        )
    }

    /// `|↓⟩|s23, m23⟩` for integer pair quantum numbers.
    pub fn down(s23: i32, m23: i32) -> Self {
        Self::new(
            -HalfInt::HALF,
            HalfInt::from_int(s23),
            HalfInt::from_int(m23),
        )
    }

    pub fn m_total(&self) -> HalfInt {
        self.m1 + self.m23
    }

    /// Arrow notation, e.g. `|↑⟩|2,+1⟩`.
    pub fn ket(&self) -> String {
        let arrow = if self.m1.twice() > 0 { '↑' } else { '↓' };
        format!("|{arrow}⟩|{},{}⟩", self.s23, self.m23.signed())
    }
}

impl fmt::Display for DeviceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m1:{}|s23:{}|m23:{}",
            self.m1.signed(),
            self.s23,
            self.m23.signed()
        )
    }
}

/// Which coupled site the mobile spin occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Site {
    Two,
    Three,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Two => f.write_str("2"),
            Site::Three => f.write_str("3"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinLabel {
    Product(ProductLabel),
    Device(DeviceLabel),
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinLabel::Product(l) => l.fmt(f),
            SpinLabel::Device(l) => l.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub site: Option<Site>,
    pub spin: SpinLabel,
}

impl BasisLabel {
    pub fn m_total(&self) -> HalfInt {
        match &self.spin {
            SpinLabel::Product(l) => l.m_total(),
            SpinLabel::Device(l) => l.m_total(),
        }
    }

    pub fn device(&self) -> Option<DeviceLabel> {
        match self.spin {
            SpinLabel::Device(d) => Some(d),
            SpinLabel::Product(_) => None,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(site) = self.site {
            write!(f, "site:{site}|")?;
        }
        self.spin.fmt(f)
    }
}

fn parse_fields(s: &str) -> Result<Vec<(&str, &str)>> {
    s.trim()
        .split('|')
        .map(|part| {
            part.split_once(':')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::LabelSyntax(s.to_string()))
        })
        .collect()
}

impl FromStr for BasisLabel {
    type Err = Error;

    /// Grammar: `[site:(2|3)|]` followed by either
    /// `m1:<m>|s23:<s>|m23:<m>` or `m1:<m>|m2:<m>|m3:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = || Error::LabelSyntax(s.to_string());
        let mut fields = parse_fields(s)?;
        let site = match fields.first() {
            Some(("site", v)) => {
                let site = match *v {
                    "2" => Site::Two,
                    "3" => Site::Three,
                    _ => return Err(syntax()),
                };
                fields.remove(0);
                Some(site)
            }
            _ => None,
        };
        let value = |h: &str| -> Result<HalfInt> { h.parse().map_err(|_| syntax()) };
        let spin = match fields.as_slice() {
            [("m1", a), ("s23", b), ("m23", c)] => {
                SpinLabel::Device(DeviceLabel::new(value(a)?, value(b)?, value(c)?))
            }
            [("m1", a), ("m2", b), ("m3", c)] => SpinLabel::Product(ProductLabel {
                m1: value(a)?,
                m2: value(b)?,
                m3: value(c)?,
            }),
            _ => return Err(syntax()),
        };
        Ok(BasisLabel { site, spin })
    }
}

impl FromStr for DeviceLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<BasisLabel>()? {
            BasisLabel {
                site: None,
                spin: SpinLabel::Device(d),
            } => Ok(d),
            _ => Err(Error::LabelSyntax(s.to_string())),
        }
    }
}

/// Ordered labeled basis with quantum-number lookup.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisRegistry {
    s23: SpinQuantum,
    labels: Vec<BasisLabel>,
}

pub(crate) fn ensure_supported(s23: SpinQuantum) -> Result<()> {
    if s23 == SpinQuantum::HALF || s23 == SpinQuantum::ONE {
        Ok(())
    } else {
        Err(Error::UnsupportedSpin(s23.to_string()))
    }
}

impl BasisRegistry {
    pub fn s23(&self) -> SpinQuantum {
        self.s23
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &BasisLabel {
        &self.labels[index]
    }

    pub fn m_total(&self, index: usize) -> HalfInt {
        self.labels[index].m_total()
    }

    pub fn has_sites(&self) -> bool {
        self.labels.first().is_some_and(|l| l.site.is_some())
    }

    pub fn index_of(&self, label: &BasisLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Index of a device label in a registry without site resolution.
    pub fn index_of_device(&self, label: &DeviceLabel) -> Result<usize> {
        self.index_of(&BasisLabel {
            site: None,
            spin: SpinLabel::Device(*label),
        })
    }

    /// Total `Sᶻ` as a diagonal operator on this basis.
    pub fn total_sz(&self) -> OperatorMatrix {
        let m: Vec<f64> = self.labels.iter().map(|l| l.m_total().value()).collect();
        OperatorMatrix::from_diag(&m)
    }

    /// Same basis with every label duplicated over the two sites, site-major.
    pub fn with_sites(&self) -> BasisRegistry {
        let labels = [Site::Two, Site::Three]
            .into_iter()
            .flat_map(|site| {
                self.labels.iter().map(move |l| BasisLabel {
                    site: Some(site),
                    spin: l.spin,
                })
            })
            .collect();
        BasisRegistry {
            s23: self.s23,
            labels,
        }
    }
}

/// Allowed `s23_total` values, `2s` down to `0`.
fn pair_totals(s23: SpinQuantum) -> impl Iterator<Item = HalfInt> {
    (0..=s23.s().twice()).rev().map(HalfInt::from_int)
}

/// Device basis `|m1⟩|s23_total, m23⟩`, ordered by descending total `m`, then
/// descending `s23_total`, then descending `m1`.
pub fn device_basis(s23: SpinQuantum) -> Result<BasisRegistry> {
    ensure_supported(s23)?;
    let mut labels = Vec::new();
    for m1 in SpinQuantum::HALF.projections() {
        for total in pair_totals(s23) {
            let total_spin = SpinQuantum::new(total)?;
            for m23 in total_spin.projections() {
                labels.push(DeviceLabel::new(m1, total, m23));
            }
        }
    }
    labels.sort_by(|a, b| {
        b.m_total()
            .cmp(&a.m_total())
            .then(b.s23.cmp(&a.s23))
            .then(b.m1.cmp(&a.m1))
    });
    Ok(BasisRegistry {
        s23,
        labels: labels
            .into_iter()
            .map(|d| BasisLabel {
                site: None,
                spin: SpinLabel::Device(d),
            })
            .collect(),
    })
}

/// Product basis in Kronecker order `s₁ ⊗ S₂ ⊗ S₃`, each factor running
/// from `+s` down to `−s`.
pub fn product_basis(s23: SpinQuantum) -> Result<BasisRegistry> {
    ensure_supported(s23)?;
    let mut labels = Vec::new();
    for m1 in SpinQuantum::HALF.projections() {
        for m2 in s23.projections() {
            for m3 in s23.projections() {
                labels.push(BasisLabel {
                    site: None,
                    spin: SpinLabel::Product(ProductLabel { m1, m2, m3 }),
                });
            }
        }
    }
    Ok(BasisRegistry { s23, labels })
}

/// Change of basis whose columns are the device states written in product
/// coordinates: `W[product, device] = ⟨product|device⟩`.
///
/// Device-basis operators follow as `W† A W`, device coordinates as `W† ψ`.
pub fn product_to_device(s23: SpinQuantum) -> Result<OperatorMatrix> {
    let product = product_basis(s23)?;
    let device = device_basis(s23)?;
    let s = s23.s();
    let mut w = OperatorMatrix::zeros(product.dim());
    for (col, dl) in device.labels().iter().enumerate() {
        let d = dl.device().expect("device registry");
        for (row, pl) in product.labels().iter().enumerate() {
            let SpinLabel::Product(p) = pl.spin else {
                unreachable!()
            };
            if p.m1 != d.m1 {
                continue;
            }
            let c = clebsch_gordan(s, p.m2, s, p.m3, d.s23, d.m23)?;
            w[(row, col)] = Complex64::new(c, 0.0);
        }
    }
    Ok(w)
}
