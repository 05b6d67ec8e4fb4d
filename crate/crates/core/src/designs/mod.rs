//! Adder architectures assembled from catalog blocks, their multi-digit
//! compositions, reference functions and cost roll-ups.

mod compose;
mod digit;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{EncoderVariant, Signal, SignalKind, SupplyMode};
use crate::errata::ids;
use crate::mvq::{quat_add_oracle, BitValue, QuatValue};
use crate::netlist::{
    exhaustive_verify, total_cost, CostBreakdown, CostItem, Netlist, VerifyReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Binary adder between a 4-to-2 decoder and a 2-to-4 encoder.
    Qb,
    /// Sum-of-products adder with a modified sum stage and binary carries.
    Ebrahimi,
    /// Decoder plus transmission-gate multiplexer adder (three supplies).
    Moaiyeri,
    /// Multiplexer adder with custom successor circuits.
    Roosta,
    /// Plain binary ripple adder, two bits per quaternary digit.
    Binary,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Qb,
        Family::Ebrahimi,
        Family::Moaiyeri,
        Family::Roosta,
        Family::Binary,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Family::Qb => "qb",
            Family::Ebrahimi => "ebrahimi",
            Family::Moaiyeri => "moaiyeri",
            Family::Roosta => "roosta",
            Family::Binary => "binary",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.keyword() == s.to_ascii_lowercase())
    }

    /// Families whose digits are quaternary-in, quaternary-out.
    pub fn is_quaternary(self) -> bool {
        self != Family::Binary
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// XOR implementation inside the quaternary-to-binary decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum XorImpl {
    X16,
    X9,
    X3,
}

impl XorImpl {
    pub const ALL: [XorImpl; 3] = [XorImpl::X16, XorImpl::X9, XorImpl::X3];

    pub fn keyword(self) -> &'static str {
        match self {
            XorImpl::X16 => "xor16",
            XorImpl::X9 => "xor9",
            XorImpl::X3 => "xor3",
        }
    }

    pub fn decoder_block(self) -> &'static str {
        match self {
            XorImpl::X16 => "DEC_Q2B_X16",
            XorImpl::X9 => "DEC_Q2B_X9",
            XorImpl::X3 => "DEC_Q2B_X3",
        }
    }
}

/// Binary full-adder cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FaImpl {
    Fa36,
    Fa18,
    Fa8,
}

impl FaImpl {
    pub const ALL: [FaImpl; 3] = [FaImpl::Fa36, FaImpl::Fa18, FaImpl::Fa8];

    pub fn keyword(self) -> &'static str {
        match self {
            FaImpl::Fa36 => "fa36",
            FaImpl::Fa18 => "fa18",
            FaImpl::Fa8 => "fa8",
        }
    }

    pub fn block(self) -> &'static str {
        match self {
            FaImpl::Fa36 => "FA36",
            FaImpl::Fa18 => "FA18",
            FaImpl::Fa8 => "FA8",
        }
    }
}

/// The three decoder/full-adder pairings reported side by side in the cost
/// tables, from most conservative to most aggressive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QbPreset {
    /// 16 T XOR decoder, 36 T NAND full adder.
    Conservative,
    /// 3 T pass-transistor XOR decoder, 18 T XOR full adder.
    Conventional,
    /// 3 T pass-transistor XOR decoder, 8 T full adder.
    Aggressive,
}

impl QbPreset {
    pub const ALL: [QbPreset; 3] = [
        QbPreset::Conservative,
        QbPreset::Conventional,
        QbPreset::Aggressive,
    ];

    pub fn parts(self) -> (XorImpl, FaImpl) {
        match self {
            QbPreset::Conservative => (XorImpl::X16, FaImpl::Fa36),
            QbPreset::Conventional => (XorImpl::X3, FaImpl::Fa18),
            QbPreset::Aggressive => (XorImpl::X3, FaImpl::Fa8),
        }
    }

    pub fn fa(self) -> FaImpl {
        self.parts().1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverterSharing {
    /// One bank of threshold inverters drives every subblock (6 T).
    Shared,
    /// Each of the four subblocks has its own bank (24 T).
    PerSubblock,
}

impl InverterSharing {
    pub fn keyword(self) -> &'static str {
        match self {
            InverterSharing::Shared => "shared",
            InverterSharing::PerSubblock => "per-subblock",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Variant {
    Qb {
        xor: XorImpl,
        fa: FaImpl,
        encoder: EncoderVariant,
    },
    Roosta {
        sharing: InverterSharing,
    },
    Binary {
        fa: FaImpl,
    },
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("{family} adders cannot be built with a {supply} supply")]
    Unsupported { family: Family, supply: SupplyMode },
    #[error("variant does not apply to {family} adders")]
    VariantMismatch { family: Family },
    #[error("{family} {organization} cannot be {width} {unit} wide")]
    Width {
        family: Family,
        organization: Organization,
        width: u32,
        unit: &'static str,
    },
}

/// A fully specified adder: family, supply mode and family options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DesignId {
    family: Family,
    supply: SupplyMode,
    variant: Variant,
}

impl DesignId {
    pub fn new(
        family: Family,
        supply: SupplyMode,
        variant: Variant,
    ) -> Result<DesignId, DesignError> {
        match (family, supply) {
            (Family::Moaiyeri, SupplyMode::Single) | (Family::Ebrahimi, SupplyMode::Triple) => {
                return Err(DesignError::Unsupported { family, supply })
            }
            _ => {}
        }
        let fits = matches!(
            (family, variant),
            (Family::Qb, Variant::Qb { .. })
                | (Family::Roosta, Variant::Roosta { .. })
                | (Family::Binary, Variant::Binary { .. })
                | (Family::Ebrahimi | Family::Moaiyeri, Variant::Fixed)
        );
        if !fits {
            return Err(DesignError::VariantMismatch { family });
        }
        Ok(DesignId {
            family,
            supply,
            variant,
        })
    }

    /// QB adder; `encoder` only matters for a single supply.
    pub fn qb(supply: SupplyMode, xor: XorImpl, fa: FaImpl) -> DesignId {
        DesignId {
            family: Family::Qb,
            supply,
            variant: Variant::Qb {
                xor,
                fa,
                encoder: EncoderVariant::V1,
            },
        }
    }

    pub fn qb_preset(supply: SupplyMode, preset: QbPreset) -> DesignId {
        let (xor, fa) = preset.parts();
        DesignId::qb(supply, xor, fa)
    }

    pub fn with_encoder(self, encoder: EncoderVariant) -> DesignId {
        match self.variant {
            Variant::Qb { xor, fa, .. } => DesignId {
                variant: Variant::Qb { xor, fa, encoder },
                ..self
            },
            _ => self,
        }
    }

    pub fn ebrahimi() -> DesignId {
        DesignId {
            family: Family::Ebrahimi,
            supply: SupplyMode::Single,
            variant: Variant::Fixed,
        }
    }

    pub fn moaiyeri() -> DesignId {
        DesignId {
            family: Family::Moaiyeri,
            supply: SupplyMode::Triple,
            variant: Variant::Fixed,
        }
    }

    pub fn roosta(supply: SupplyMode, sharing: InverterSharing) -> DesignId {
        DesignId {
            family: Family::Roosta,
            supply,
            variant: Variant::Roosta { sharing },
        }
    }

    pub fn binary(fa: FaImpl) -> DesignId {
        DesignId {
            family: Family::Binary,
            supply: SupplyMode::Single,
            variant: Variant::Binary { fa },
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn supply(&self) -> SupplyMode {
        self.supply
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Every supported 1-digit configuration.
    pub fn all() -> Vec<DesignId> {
        let mut out = Vec::new();
        for supply in SupplyMode::ALL {
            for xor in XorImpl::ALL {
                for fa in FaImpl::ALL {
                    let id = DesignId::qb(supply, xor, fa);
                    out.push(id);
                    if supply == SupplyMode::Single {
                        out.push(id.with_encoder(EncoderVariant::V2));
                    }
                }
            }
        }
        out.push(DesignId::ebrahimi());
        out.push(DesignId::moaiyeri());
        for supply in SupplyMode::ALL {
            for sharing in [InverterSharing::PerSubblock, InverterSharing::Shared] {
                out.push(DesignId::roosta(supply, sharing));
            }
        }
        for fa in FaImpl::ALL {
            out.push(DesignId::binary(fa));
        }
        out
    }
}

impl fmt::Display for DesignId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Qb { xor, fa, encoder } => {
                write!(f, "qb-{}-{}-{}", self.supply, xor.keyword(), fa.keyword())?;
                if self.supply == SupplyMode::Single {
                    write!(
                        f,
                        "-{}",
                        if encoder == EncoderVariant::V1 {
                            "v1"
                        } else {
                            "v2"
                        }
                    )?;
                }
                Ok(())
            }
            Variant::Roosta { sharing } => {
                write!(f, "roosta-{}-{}", self.supply, sharing.keyword())
            }
            Variant::Binary { fa } => write!(f, "binary-{}", fa.keyword()),
            Variant::Fixed => write!(f, "{}-{}", self.family, self.supply),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Organization {
    Cpa,
    Cla,
    Csa,
}

impl Organization {
    pub const ALL: [Organization; 3] = [Organization::Cpa, Organization::Cla, Organization::Csa];

    pub fn keyword(self) -> &'static str {
        match self {
            Organization::Cpa => "cpa",
            Organization::Cla => "cla",
            Organization::Csa => "csa",
        }
    }
}

impl fmt::Display for Organization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.keyword().to_ascii_uppercase())
    }
}

/// Multi-digit organization; `width` counts digits, or bits for binary adders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositionKind {
    pub kind: Organization,
    pub width: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// Two single-digit operands plus a binary carry in (binary: two bits).
    Digit,
    /// Two single-digit operands, no carry in.
    HalfAdder,
    Composition(CompositionKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMode {
    /// Reproduces the printed arithmetic, including its omissions.
    Published,
    /// Sums every instance of the functional netlist.
    AsBuilt,
}

impl CostMode {
    pub fn keyword(self) -> &'static str {
        match self {
            CostMode::Published => "published",
            CostMode::AsBuilt => "asbuilt",
        }
    }

    pub fn from_keyword(s: &str) -> Option<CostMode> {
        match s {
            "published" | "paper" => Some(CostMode::Published),
            "asbuilt" | "as-built" => Some(CostMode::AsBuilt),
            _ => None,
        }
    }
}

/// Reference function from input values to expected outputs.
pub type Oracle = Box<dyn Fn(&[Signal]) -> Vec<Signal> + Sync>;

/// A point where the printed count and the functional netlist disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub item: String,
    pub block: String,
    pub asbuilt: u32,
    pub published: u32,
    pub erratum: String,
}

/// A built adder: its functional netlist plus the bookkeeping needed to
/// reproduce the printed transistor count.
#[derive(Debug, Clone)]
pub struct Design {
    id: DesignId,
    shape: Shape,
    netlist: Netlist,
    /// Instances present in the netlist but absent from the printed count.
    omitted: Vec<(String, &'static str)>,
    /// Printed overhead exceeding the built one: (item, built, printed, erratum).
    surcharge: Option<(String, u32, u32, &'static str)>,
}

pub(crate) struct Builder {
    pub n: Netlist,
    pub omitted: Vec<(String, &'static str)>,
}

impl Builder {
    pub fn new(name: String, supply: SupplyMode) -> Builder {
        Builder {
            n: Netlist::new(name, supply),
            omitted: Vec::new(),
        }
    }

    pub fn put(&mut self, name: &str, block: &str, ins: &[&str], outs: &[&str]) {
        self.n
            .add_instance(name, block, ins, outs)
            .unwrap_or_else(|e| panic!("builder produced an invalid instance `{name}`: {e}"));
    }

    pub fn input(&mut self, name: &str, kind: SignalKind) {
        self.n
            .add_input(name, kind)
            .expect("builder inputs are unique");
    }

    pub fn output(&mut self, name: &str, kind: SignalKind) {
        self.n
            .add_output(name, kind)
            .expect("builder outputs are unique");
    }

    pub fn omit(&mut self, instance: &str, erratum: &'static str) {
        self.omitted.push((instance.to_string(), erratum));
    }
}

impl Design {
    pub(crate) fn from_builder(id: DesignId, shape: Shape, b: Builder) -> Design {
        Design {
            id,
            shape,
            netlist: b.n,
            omitted: b.omitted,
            surcharge: None,
        }
    }

    pub fn id(&self) -> DesignId {
        self.id
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn into_netlist(self) -> Netlist {
        self.netlist
    }

    pub fn cost(&self, mode: CostMode) -> CostBreakdown {
        let built = total_cost(&self.netlist).expect("builder netlists respect their supply mode");
        match mode {
            CostMode::AsBuilt => built,
            CostMode::Published => {
                let mut items: Vec<CostItem> = built
                    .items
                    .into_iter()
                    .filter(|i| !self.omitted.iter().any(|(name, _)| *name == i.label))
                    .collect();
                if let Some((item, built, printed, _)) = &self.surcharge {
                    items.push(CostItem {
                        label: format!("{item} (printed excess)"),
                        block: "UNACCOUNTED".to_string(),
                        cost: printed - built,
                    });
                }
                CostBreakdown::from_items(items)
            }
        }
    }

    pub fn total(&self, mode: CostMode) -> u32 {
        self.cost(mode).total
    }

    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        let mut out: Vec<Discrepancy> = self
            .omitted
            .iter()
            .map(|(name, erratum)| {
                let inst = self
                    .netlist
                    .instances()
                    .iter()
                    .find(|i| i.name == *name)
                    .expect("omitted instances exist");
                Discrepancy {
                    item: name.clone(),
                    block: inst.block.name.to_string(),
                    asbuilt: inst.block.cost(self.netlist.supply()).unwrap_or(0),
                    published: 0,
                    erratum: erratum.to_string(),
                }
            })
            .collect();
        if let Some((item, built, printed, erratum)) = &self.surcharge {
            out.push(Discrepancy {
                item: item.clone(),
                block: "UNACCOUNTED".to_string(),
                asbuilt: *built,
                published: *printed,
                erratum: erratum.to_string(),
            });
        }
        out
    }

    /// Reference function over this design's input order.
    pub fn oracle(&self) -> Oracle {
        match (self.shape, self.id.family) {
            (Shape::HalfAdder, _) => Box::new(half_adder_oracle),
            (Shape::Digit, Family::Binary) => Box::new(binary_oracle(2)),
            (Shape::Digit, _) => Box::new(digit_oracle),
            (Shape::Composition(c), Family::Binary) => Box::new(binary_oracle(c.width as usize)),
            (Shape::Composition(c), _) => Box::new(quaternary_oracle(c.width as usize)),
        }
    }

    pub fn verify(&self) -> VerifyReport {
        exhaustive_verify(&self.netlist, self.oracle()).expect("builder netlists are well formed")
    }
}

// ---------------------------------------------------------------------------
// reference functions

fn quat(s: Signal) -> QuatValue {
    QuatValue::new(s.raw()).expect("quaternary input")
}

fn bit(s: Signal) -> BitValue {
    BitValue::new(s.raw()).expect("binary input")
}

/// `(A, B, Cin) -> (QS, QC)`.
pub fn digit_oracle(v: &[Signal]) -> Vec<Signal> {
    let (s, c) = quat_add_oracle(quat(v[0]), quat(v[1]), bit(v[2]));
    vec![s.into(), c.into()]
}

/// `(A, B) -> (QS, QC)`.
pub fn half_adder_oracle(v: &[Signal]) -> Vec<Signal> {
    let (s, c) = quat_add_oracle(quat(v[0]), quat(v[1]), BitValue::LOW);
    vec![s.into(), c.into()]
}

/// `(A0..An-1, B0..Bn-1, Cin) -> (QS0..QSn-1, QC)` by integer addition.
pub fn quaternary_oracle(digits: usize) -> impl Fn(&[Signal]) -> Vec<Signal> + Sync {
    move |v: &[Signal]| {
        let value = |xs: &[Signal]| {
            xs.iter()
                .rev()
                .fold(0u64, |acc, s| acc * 4 + s.raw() as u64)
        };
        let total =
            value(&v[..digits]) + value(&v[digits..2 * digits]) + v[2 * digits].raw() as u64;
        let mut out: Vec<Signal> = (0..digits)
            .map(|i| Signal::Quat(QuatValue::wrapping((total >> (2 * i)) as u32)))
            .collect();
        out.push(Signal::Bit(BitValue::from(total >> (2 * digits) != 0)));
        out
    }
}

/// `(a0..an-1, b0..bn-1, cin) -> (s0..sn-1, cout)` by integer addition.
pub fn binary_oracle(bits: usize) -> impl Fn(&[Signal]) -> Vec<Signal> + Sync {
    move |v: &[Signal]| {
        let value = |xs: &[Signal]| {
            xs.iter()
                .rev()
                .fold(0u64, |acc, s| acc * 2 + s.raw() as u64)
        };
        let total = value(&v[..bits]) + value(&v[bits..2 * bits]) + v[2 * bits].raw() as u64;
        (0..=bits)
            .map(|i| Signal::Bit(BitValue::from((total >> i) & 1 == 1)))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// builders

/// One-digit adder of any family (binary: a 2-bit adder).
pub fn build_digit(id: DesignId) -> Design {
    match id.family {
        Family::Qb => digit::qb(id),
        Family::Ebrahimi => digit::ebrahimi_fa(),
        Family::Moaiyeri => digit::moaiyeri_fa(),
        Family::Roosta => match id.variant {
            Variant::Roosta { sharing } => digit::roosta_fa(id.supply, sharing),
            _ => unreachable!("validated by DesignId"),
        },
        Family::Binary => build_composition(
            id,
            CompositionKind {
                kind: Organization::Cpa,
                width: 2,
            },
        )
        .map(|d| Design {
            shape: Shape::Digit,
            ..d
        })
        .expect("2-bit ripple adder is always valid"),
    }
}

pub fn build_qb_digit(id: DesignId) -> Result<Design, DesignError> {
    if id.family != Family::Qb {
        return Err(DesignError::VariantMismatch { family: id.family });
    }
    Ok(digit::qb(id))
}

pub fn build_ebrahimi_fa() -> Design {
    digit::ebrahimi_fa()
}

pub fn build_ebrahimi_ha() -> Design {
    digit::ebrahimi_ha()
}

pub fn build_moaiyeri_fa() -> Design {
    digit::moaiyeri_fa()
}

pub fn build_moaiyeri_ha() -> Design {
    digit::moaiyeri_ha()
}

pub fn build_roosta_fa(supply: SupplyMode, sharing: InverterSharing) -> Design {
    digit::roosta_fa(supply, sharing)
}

pub fn build_cpa(id: DesignId, width: u32) -> Result<Design, DesignError> {
    build_composition(
        id,
        CompositionKind {
            kind: Organization::Cpa,
            width,
        },
    )
}

pub fn build_cla(id: DesignId, width: u32) -> Result<Design, DesignError> {
    build_composition(
        id,
        CompositionKind {
            kind: Organization::Cla,
            width,
        },
    )
}

pub fn build_csa(id: DesignId, width: u32) -> Result<Design, DesignError> {
    build_composition(
        id,
        CompositionKind {
            kind: Organization::Csa,
            width,
        },
    )
}

fn check_width(id: DesignId, c: CompositionKind) -> Result<(), DesignError> {
    let ok = match (id.family, c.kind) {
        (Family::Binary, Organization::Cpa) => (1..=8).contains(&c.width),
        (Family::Binary, _) => c.width == 4 || c.width == 8,
        (Family::Qb, Organization::Cpa) => (1..=4).contains(&c.width),
        (Family::Qb, _) => c.width == 2 || c.width == 4,
        (_, Organization::Cpa) => (1..=4).contains(&c.width),
        (_, _) => c.width == 4,
    };
    if ok {
        Ok(())
    } else {
        Err(DesignError::Width {
            family: id.family,
            organization: c.kind,
            width: c.width,
            unit: if id.family == Family::Binary {
                "bits"
            } else {
                "digits"
            },
        })
    }
}

/// Four-digit CLA overhead used by the single-supply table for QB adders.
pub const PRINTED_QB_CLA_OVERHEAD_SINGLE: u32 = 248;

pub fn build_composition(id: DesignId, c: CompositionKind) -> Result<Design, DesignError> {
    check_width(id, c)?;
    let mut d = compose::build(id, c);
    if id.family == Family::Qb
        && id.supply == SupplyMode::Single
        && c.kind == Organization::Cla
        && c.width == 4
    {
        let built = d
            .netlist
            .instances()
            .iter()
            .filter(|i| {
                matches!(i.block.name, "BGEN" | "BPROP") || i.block.name.starts_with("CLA_C")
            })
            .map(|i| i.block.cost(id.supply).unwrap_or(0))
            .sum();
        d.surcharge = Some((
            "carry lookahead".to_string(),
            built,
            PRINTED_QB_CLA_OVERHEAD_SINGLE,
            ids::T7_QB_CLA_OVERHEAD,
        ));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_combinations() {
        assert_eq!(
            DesignId::new(Family::Moaiyeri, SupplyMode::Single, Variant::Fixed),
            Err(DesignError::Unsupported {
                family: Family::Moaiyeri,
                supply: SupplyMode::Single
            })
        );
        assert!(DesignId::new(Family::Ebrahimi, SupplyMode::Triple, Variant::Fixed).is_err());
        assert!(DesignId::new(Family::Roosta, SupplyMode::Single, Variant::Fixed).is_err());
        assert_eq!(
            DesignId::new(Family::Ebrahimi, SupplyMode::Single, Variant::Fixed),
            Ok(DesignId::ebrahimi())
        );
    }

    #[test]
    fn widths() {
        assert!(build_cla(DesignId::ebrahimi(), 3).is_err());
        assert!(build_csa(DesignId::binary(FaImpl::Fa18), 6).is_err());
        assert!(build_cpa(DesignId::moaiyeri(), 5).is_err());
        assert!(build_cla(DesignId::binary(FaImpl::Fa18), 4).is_ok());
    }

    #[test]
    fn oracles() {
        let q = |x: u8| Signal::Quat(QuatValue::new(x).unwrap());
        let b = |x: u8| Signal::Bit(BitValue::new(x).unwrap());
        assert_eq!(digit_oracle(&[q(1), q(3), b(0)]), vec![q(0), b(1)]);
        let two = quaternary_oracle(2);
        // 33 + 33 + 1 in base 4 is 15 + 15 + 1 = 31 = 1*16 + 3*4 + 3
        assert_eq!(two(&[q(3), q(3), q(3), q(3), b(1)]), vec![q(3), q(3), b(1)]);
        let bin = binary_oracle(2);
        assert_eq!(bin(&[b(1), b(1), b(1), b(0), b(1)]), vec![b(1), b(0), b(1)]);
    }

    #[test]
    fn catalogue_of_ids() {
        let all = DesignId::all();
        assert_eq!(all.len(), 9 + 18 + 1 + 1 + 4 + 3);
        assert_eq!(
            DesignId::qb_preset(SupplyMode::Triple, QbPreset::Conventional).to_string(),
            "qb-triple-xor3-fa18"
        );
        assert_eq!(
            DesignId::qb_preset(SupplyMode::Single, QbPreset::Conventional).to_string(),
            "qb-single-xor3-fa18-v1"
        );
        assert_eq!(CostMode::from_keyword("paper"), Some(CostMode::Published));
    }
}
