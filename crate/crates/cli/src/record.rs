use heatsphere::exactnum::{ExactValue, Rational};
use heatsphere::HeatInvariantResult;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Exact value as decimal numerator/denominator strings plus the power of √π.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactJson {
    pub num: String,
    pub den: String,
    pub pi_half: i64,
}

impl From<&ExactValue> for ExactJson {
    fn from(v: &ExactValue) -> Self {
        ExactJson {
            num: v.coeff().numer().to_string(),
            den: v.coeff().denom().to_string(),
            pi_half: v.pi_half(),
        }
    }
}

impl ExactJson {
    pub fn to_exact(&self) -> Result<ExactValue, String> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| format!("`{s}` is not a decimal integer"))
        };
        let den = parse(&self.den)?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(ExactValue::new(
            Rational::new(parse(&self.num)?, den),
            self.pi_half,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u32,
    pub d: u32,
    pub omega_used: Option<i64>,
    pub route: String,
    pub value: ExactJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float_value: Option<f64>,
}

pub const CSV_HEADER: &str = "n,d,omega,route,num,den,pi_half,float";

impl From<&HeatInvariantResult> for OutputRecord {
    fn from(r: &HeatInvariantResult) -> Self {
        let float = r.value.to_f64();
        OutputRecord {
            n: r.n,
            d: r.d,
            omega_used: r.omega_used,
            route: r.route.to_string(),
            value: ExactJson::from(&r.value),
            float_value: float.is_finite().then_some(float),
        }
    }
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.d,
            opt(self.omega_used.map(|w| w.to_string())),
            self.route,
            self.value.num,
            self.value.den,
            self.value.pi_half,
            opt(self
                .float_value
                .map(|f| serde_json::to_string(&f).expect("finite float"))),
        )
    }
}
