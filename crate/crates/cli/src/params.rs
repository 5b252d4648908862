use std::fmt;

use anyhow::Result;
use mop_core::explorer::constrained_weight;
use mop_core::par::Execution;
use mop_core::scalar::{parse_rational, rat};
use mop_core::weights::build_weight_u;
use mop_core::{build_weight, ExactScalar, WeightSpec};
use num_rational::BigRational;

use crate::cli::Params;

/// Bad command-line input; exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn scalar(flag: &str, s: &str) -> Result<ExactScalar> {
    s.parse().map_err(|e| usage(format!("--{flag} {s}: {e}")))
}

impl Params {
    pub fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    pub fn alpha(&self) -> Result<BigRational> {
        parse_rational(&self.alpha).map_err(|e| usage(format!("--alpha {}: {e}", self.alpha)))
    }

    pub fn u(&self) -> Result<Option<ExactScalar>> {
        self.u.as_deref().map(|s| scalar("u", s)).transpose()
    }

    fn modulus(&self) -> Result<Option<BigRational>> {
        self.modulus
            .as_deref()
            .map(|s| parse_rational(s).map_err(|e| usage(format!("--modulus {s}: {e}"))))
            .transpose()
    }

    /// Explicit nu parameters, from --nu or --a.
    fn explicit_nu(&self) -> Result<Option<Vec<ExactScalar>>> {
        match (&self.a, self.nu.is_empty()) {
            (Some(_), false) => Err(usage("give either --a or --nu, not both")),
            (Some(a), true) => {
                if self.n != 2 {
                    return Err(usage(format!("--a needs --N 2; use --nu for N = {}", self.n)));
                }
                Ok(Some(vec![scalar("a", a)?]))
            }
            (None, false) => Ok(Some(self.nu.iter().map(|s| scalar("nu", s)).collect::<Result<_>>()?)),
            (None, true) => Ok(None),
        }
    }

    /// Whether the weight was pinned down on the command line.
    pub fn weight_given(&self) -> bool {
        self.a.is_some() || !self.nu.is_empty() || self.modulus.is_some() || self.u.is_some()
    }

    /// The weight selected by the flags. Without nu, N = 2 uses a = 1 and
    /// larger N a constrained weight with |nu_{N-1}|^2 = 2.
    pub fn weight(&self) -> Result<WeightSpec> {
        if self.n == 0 {
            return Err(usage("--N must be at least 1"));
        }
        let alpha = self.alpha()?;
        if let Some(u) = self.u()? {
            if self.n != 2 {
                return Err(usage("--u needs --N 2"));
            }
            return Ok(build_weight_u(alpha, u, self.a_value()?)?);
        }
        if let Some(nu) = self.explicit_nu()? {
            if self.modulus.is_some() {
                return Err(usage("--modulus conflicts with explicit nu"));
            }
            return Ok(build_weight(self.n, alpha, nu)?);
        }
        match (self.n, self.modulus()?) {
            (1, None) => Ok(build_weight(1, alpha, Vec::new())?),
            (2, None) => Ok(build_weight(2, alpha, vec![ExactScalar::one()])?),
            (n, r) => Ok(constrained_weight(
                n,
                alpha,
                &r.unwrap_or_else(|| rat(2, 1)),
                &[ExactScalar::one()],
            )?),
        }
    }

    /// The N = 2 parameter a, defaulting to 1.
    pub fn a_value(&self) -> Result<ExactScalar> {
        if self.n != 2 {
            return Err(usage(format!("this command needs --N 2, got {}", self.n)));
        }
        match self.explicit_nu()? {
            Some(nu) if nu.len() == 1 => Ok(nu[0].clone()),
            Some(nu) => Err(usage(format!("--N 2 takes one nu, got {}", nu.len()))),
            None => Ok(ExactScalar::one()),
        }
    }

    /// `(alpha, a)` for the commands that only exist for N = 2.
    pub fn pair(&self) -> Result<(BigRational, ExactScalar)> {
        if self.u()?.is_some_and(|u| !u.is_zero()) {
            return Err(usage("this command is defined for u = 0 only"));
        }
        Ok((self.alpha()?, self.a_value()?))
    }
}
