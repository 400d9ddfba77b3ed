use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::Result;
use crate::series::{convert_basis, Basis, GradedPolynomial};
use crate::zeta::corpus::CorpusInstance;
use crate::zeta::operator::{
    curvature_to_ph, l_class_in_ph, sdet, substitute_ph, ConcreteCurvature, FormalCurvature, KineticTriple, Mode,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteCheck {
    pub instance: String,
    pub generators: usize,
    pub value: String,
    pub formal_substituted: String,
    pub equal: bool,
}

/// Outcome of one superdeterminant run.
#[derive(Clone, Debug, PartialEq)]
pub struct SdetReport {
    pub n: usize,
    pub k_max: usize,
    pub mode: Mode,
    pub periodic_periodic: bool,
    pub sdet: GradedPolynomial<BigRational>,
    pub l_class: GradedPolynomial<BigRational>,
    /// sdet = L-class, or sdet = 1 for periodic-periodic circles.
    pub equal: bool,
    pub concrete: Option<ConcreteCheck>,
}

impl SdetReport {
    pub fn sdet_in_pontryagin(&self) -> Result<GradedPolynomial<BigRational>> {
        convert_basis(&self.sdet)
    }

    pub fn passed(&self) -> bool {
        self.equal && self.concrete.as_ref().is_none_or(|c| c.equal)
    }

    pub fn to_json(&self) -> Result<Value> {
        let mut v = json!({
            "n": self.n,
            "K": self.k_max,
            "mode": self.mode.name(),
            "periodic_periodic": self.periodic_periodic,
            "sdet": self.sdet.to_json(),
            "sdet_pontryagin": self.sdet_in_pontryagin()?.to_json(),
            "l_class": self.l_class.to_json(),
            "equal": self.equal,
        });
        if let Some(c) = &self.concrete {
            v["concrete"] = json!({
                "instance": c.instance,
                "generators": c.generators,
                "value": c.value,
                "formal_substituted": c.formal_substituted,
                "equal": c.equal,
            });
        }
        Ok(v)
    }

    pub fn render(&self) -> Result<String> {
        let mut out = format!(
            "sdet (n = {}, K = {}, {} mode, {} circle)\n  sdet    = {}\n  in p    = {}\n  L-class = {}\n",
            self.n,
            self.k_max,
            self.mode.name(),
            if self.periodic_periodic { "periodic-periodic" } else { "periodic-antiperiodic" },
            self.sdet,
            self.sdet_in_pontryagin()?,
            self.l_class,
        );
        let target = if self.periodic_periodic { "1" } else { "L-class" };
        out.push_str(&format!("  sdet = {target}: {}\n", if self.equal { "MATCH" } else { "MISMATCH" }));
        if let Some(c) = &self.concrete {
            out.push_str(&format!(
                "  concrete instance {} ({} generators)\n    value   = {}\n    formal  = {}\n    {}\n",
                c.instance,
                c.generators,
                c.value,
                c.formal_substituted,
                if c.equal { "MATCH" } else { "MISMATCH" }
            ));
        }
        Ok(out)
    }
}

fn triple(n: usize, periodic_periodic: bool) -> Result<KineticTriple> {
    if periodic_periodic {
        Ok(KineticTriple::periodic_periodic(n))
    } else {
        KineticTriple::periodic_antiperiodic(n)
    }
}

pub fn formal_report(n: usize, k_max: usize, periodic_periodic: bool) -> Result<SdetReport> {
    let s = sdet(&triple(n, periodic_periodic)?, &FormalCurvature::new(n, k_max))?;
    let l_class = l_class_in_ph(k_max)?;
    let expected = if periodic_periodic { GradedPolynomial::one(Basis::Character, k_max) } else { l_class.clone() };
    Ok(SdetReport {
        n,
        k_max,
        mode: Mode::Formal,
        periodic_periodic,
        equal: s.value == expected,
        sdet: s.value,
        l_class,
        concrete: None,
    })
}

/// Runs the formal pipeline at the instance's rank and compares it with the
/// concrete Grassmann computation under ph_k ↦ curvature_to_ph.
pub fn concrete_report(instance: &CorpusInstance, k_max: usize, periodic_periodic: bool) -> Result<SdetReport> {
    let n = instance.curvature.dimension();
    let mut report = formal_report(n, k_max, periodic_periodic)?;
    let concrete = sdet(&triple(n, periodic_periodic)?, &ConcreteCurvature::new(instance.curvature.clone()))?;
    let ph: Vec<_> = (1..=k_max as u32).map(|k| curvature_to_ph(&instance.curvature, k)).collect();
    let substituted = substitute_ph(&report.sdet, &ph);
    report.mode = Mode::Concrete;
    report.concrete = Some(ConcreteCheck {
        instance: instance.name.to_string(),
        generators: instance.generators,
        value: concrete.value.render(),
        formal_substituted: substituted.render(),
        equal: concrete.value == substituted,
    });
    Ok(report)
}
