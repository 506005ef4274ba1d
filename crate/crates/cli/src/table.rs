//! Built-in expectations for the family's class groups and unit indices,
//! used by `oracle compare` as a regression anchor. Elementary divisors are
//! stored as decimal strings; the trivial group is the empty list.

/// (s, elementary divisors of the class group, expected unit index [E:U]).
pub const CLASS_GROUP_TABLE: &[(&str, &[&str], u64)] = &[
    ("4", &[], 40),
    ("-12", &["4"], 1),
    ("48", &["4", "4", "4"], 1),
    ("-176", &["60", "5"], 1),
    ("660", &["260", "20", "5"], 1),
    ("-2460", &["81120", "4", "2", "2"], 1),
    ("9184", &["115500", "28"], 1),
    ("-34272", &["25104840", "30", "3"], 1),
    ("127908", &["924437696", "4", "4", "4"], 1),
    ("-477356", &["1332657200", "20", "2", "2"], 1),
    ("1781520", &["28009347406480", "2"], 1),
    ("-6648720", &["25020857770200", "20", "4", "2"], 1),
    ("24813364", &["3937737813077376", "4", "2"], 1),
    ("-92604732", &["21266991873333180", "20", "4", "4"], 1),
    ("345605568", &["4788485135078294496", "12", "6"], 1),
];

pub fn lookup(s: &str) -> Option<(&'static [&'static str], u64)> {
    CLASS_GROUP_TABLE
        .iter()
        .find(|(k, _, _)| *k == s)
        .map(|(_, inv, idx)| (*inv, *idx))
}
