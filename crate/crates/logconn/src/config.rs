//! Flat `key = value` instance configuration. Keys: lambda, t, r, nu1, nu2.
//! Blank lines and lines starting with `#` are ignored.

use crate::curve::CurveInstance;
use crate::error::{Error, Result};
use crate::exact::{parse_q, Q};

pub const KEYS: [&str; 5] = ["lambda", "t", "r", "nu1", "nu2"];

/// Instance parameters, each optional; unset values fall back to INST-A.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceConfig {
    pub lambda: Option<Q>,
    pub t: Option<Q>,
    pub r: Option<Q>,
    pub nu1: Option<Q>,
    pub nu2: Option<Q>,
}

impl InstanceConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = InstanceConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Precondition(format!("config line {}: expected key=value", n + 1)))?;
            c.set(k.trim(), v.trim()).map_err(|e| Error::Precondition(format!("config line {}: {e}", n + 1)))?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = Some(parse_q(value)?);
        match key {
            "lambda" => self.lambda = v,
            "t" => self.t = v,
            "r" => self.r = v,
            "nu1" => self.nu1 = v,
            "nu2" => self.nu2 = v,
            _ => return Err(Error::Precondition(format!("unknown config key {key:?}; allowed: {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Values set in `o` win.
    pub fn overridden_by(&self, o: &Self) -> Self {
        let pick = |a: &Option<Q>, b: &Option<Q>| b.clone().or_else(|| a.clone());
        InstanceConfig {
            lambda: pick(&self.lambda, &o.lambda),
            t: pick(&self.t, &o.t),
            r: pick(&self.r, &o.r),
            nu1: pick(&self.nu1, &o.nu1),
            nu2: pick(&self.nu2, &o.nu2),
        }
    }

    pub fn instance(&self) -> Result<CurveInstance> {
        let a = CurveInstance::inst_a();
        let get = |v: &Option<Q>, d: Q| v.clone().unwrap_or(d);
        CurveInstance::new(
            get(&self.lambda, a.lambda),
            get(&self.t, a.t),
            get(&self.r, a.r),
            get(&self.nu1, a.nu1),
            get(&self.nu2, a.nu2),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn parse_and_override() {
        let c = InstanceConfig::parse("# instance\nlambda = -3\nt=3\n\nr = 6\nnu1 = 1/3\nnu2=1/5\n").unwrap();
        assert_eq!(c.instance().unwrap(), CurveInstance::inst_a());
        let flags = InstanceConfig { nu2: Some(q(-4, 3)), ..Default::default() };
        assert_eq!(c.overridden_by(&flags).instance().unwrap(), CurveInstance::inst_b());
        assert_eq!(InstanceConfig::default().instance().unwrap(), CurveInstance::inst_a());
        assert_eq!(c.nu1, Some(q(1, 3)));
        assert_eq!(c.t, Some(qi(3)));
    }

    #[test]
    fn errors_name_the_constraint() {
        let e = InstanceConfig::parse("mu = 1").unwrap_err().to_string();
        assert!(e.contains("unknown config key"));
        let e = InstanceConfig::parse("t 3").unwrap_err().to_string();
        assert!(e.contains("key=value"));
        let e = InstanceConfig::parse("r = 5").unwrap().instance().unwrap_err().to_string();
        assert!(e.contains("r^2"));
    }
}
