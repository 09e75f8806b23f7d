//! One computation session: groups are declared first, then the scalar
//! context is fixed for all of them at once.

use std::sync::Arc;

use qell::charmod::ScalarContext;
use qell::group::{DirectProduct, FiniteGroup};

use crate::error::CliError;
use crate::spec::GroupSpec;

pub const CAP_ENV: &str = "QELL_ORDER_CAP";

pub struct Session {
    cap: usize,
    groups: Vec<Arc<FiniteGroup>>,
    scalars: Option<Arc<ScalarContext>>,
}

impl Session {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            groups: Vec::new(),
            scalars: None,
        }
    }

    /// Reads the order cap from the environment, falling back to the default.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(CAP_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(cap) if cap >= 1 => Ok(Self::new(cap)),
                _ => Err(CliError::Usage(format!("{CAP_ENV} must be a positive integer, got `{v}`"))),
            },
            Err(_) => Ok(Self::new(qell::DEFAULT_ORDER_CAP)),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_open(&self) -> Result<(), CliError> {
        if self.scalars.is_some() {
            return Err(CliError::Precondition(
                "the scalar context is already fixed; declare every group first".into(),
            ));
        }
        Ok(())
    }

    pub fn group(&mut self, spec: &GroupSpec) -> Result<Arc<FiniteGroup>, CliError> {
        self.check_open()?;
        let g = spec.build(self.cap)?;
        self.groups.push(g.clone());
        Ok(g)
    }

    pub fn product(&mut self, left: Arc<FiniteGroup>, right: Arc<FiniteGroup>) -> Result<DirectProduct, CliError> {
        self.check_open()?;
        let dp = DirectProduct::new(left, right, self.cap)?;
        self.groups.push(dp.group.clone());
        Ok(dp)
    }

    /// Fixes the scalar context covering every declared group.
    pub fn seal(&mut self) -> Result<Arc<ScalarContext>, CliError> {
        self.check_open()?;
        let refs: Vec<&FiniteGroup> = self.groups.iter().map(|g| &**g).collect();
        let k = Arc::new(ScalarContext::for_groups(&refs)?);
        self.scalars = Some(k.clone());
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declaring_after_sealing_fails() {
        let mut s = Session::new(qell::DEFAULT_ORDER_CAP);
        let g = s.group(&"S3".parse().unwrap()).unwrap();
        let h = s.group(&"C4".parse().unwrap()).unwrap();
        let dp = s.product(g, h).unwrap();
        let k = s.seal().unwrap();
        k.covers(&dp.group).unwrap();
        let e = s.group(&"C5".parse().unwrap()).unwrap_err();
        assert_eq!(e.exit_code(), 5);
    }
}
