//! Single-site corruptions used to confirm that the checkers detect errors.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::SampledCategory;
use crate::error::Error;

/// Where a corruption is injected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationSite {
    /// Every composite is corrupted.
    Compose,
    /// Every identity morphism is corrupted.
    Identity,
    /// The morphism map of the functor under test is replaced by its adjoint.
    Functor,
    /// Every component of the transformation under test is corrupted.
    Component,
}

impl MutationSite {
    pub const ALL: [MutationSite; 4] =
        [MutationSite::Compose, MutationSite::Identity, MutationSite::Functor, MutationSite::Component];

    pub fn as_str(self) -> &'static str {
        match self {
            MutationSite::Compose => "compose",
            MutationSite::Identity => "identity",
            MutationSite::Functor => "functor",
            MutationSite::Component => "component",
        }
    }
}

impl fmt::Display for MutationSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MutationSite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        MutationSite::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown mutation site {s:?}")))
    }
}

/// A category whose composition or identity has been corrupted.
///
/// Sites other than `Compose` and `Identity` leave the category untouched.
#[derive(Debug, Clone)]
pub struct MutatedCategory<C> {
    pub inner: C,
    pub site: MutationSite,
}

impl<C: SampledCategory> SampledCategory for MutatedCategory<C> {
    type Ob = C::Ob;
    type Mor = C::Mor;

    fn name(&self) -> String {
        self.inner.name()
    }

    fn source(&self, f: &C::Mor) -> C::Ob {
        self.inner.source(f)
    }

    fn target(&self, f: &C::Mor) -> C::Ob {
        self.inner.target(f)
    }

    fn identity(&self, x: &C::Ob) -> C::Mor {
        let e = self.inner.identity(x);
        match self.site {
            MutationSite::Identity => self.inner.corrupt(&e),
            _ => e,
        }
    }

    fn compose(&self, f: &C::Mor, g: &C::Mor) -> Option<C::Mor> {
        let gf = self.inner.compose(f, g)?;
        Some(match self.site {
            MutationSite::Compose => self.inner.corrupt(&gf),
            _ => gf,
        })
    }

    fn ob_distance(&self, a: &C::Ob, b: &C::Ob) -> f64 {
        self.inner.ob_distance(a, b)
    }

    fn mor_distance(&self, f: &C::Mor, g: &C::Mor) -> f64 {
        self.inner.mor_distance(f, g)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Option<C::Ob> {
        self.inner.sample_object(rng)
    }

    fn sample_morphism_from(&self, x: &C::Ob, rng: &mut ChaCha8Rng) -> Option<C::Mor> {
        self.inner.sample_morphism_from(x, rng)
    }

    fn corrupt(&self, f: &C::Mor) -> C::Mor {
        self.inner.corrupt(f)
    }

    fn ob_json(&self, x: &C::Ob) -> Value {
        self.inner.ob_json(x)
    }

    fn mor_json(&self, f: &C::Mor) -> Value {
        self.inner.mor_json(f)
    }
}
