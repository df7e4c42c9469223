//! Family descriptors such as `product:cyclic:3,cyclic:5`.
//!
//! Descriptors are prefix expressions: every family takes a fixed number of
//! arguments, so nested products parse without brackets
//! (`product:product:cyclic:2,cyclic:2,cyclic:3` is `(Z2×Z2)×Z3`).
//! `table:<path>` consumes the rest of the string.

use std::collections::HashMap;

use super::{parse_table_text, Group, GroupError, MAX_ORDER};

pub fn build_group(descriptor: &str) -> Result<Group, GroupError> {
    let mut p = Parser { src: descriptor, pos: 0 };
    let g = p.group()?;
    if p.pos != descriptor.len() {
        return Err(p.malformed(format!("trailing input {:?}", &descriptor[p.pos..])));
    }
    Ok(g)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn malformed(&self, reason: String) -> GroupError {
        GroupError::Malformed { descriptor: self.src.to_string(), reason }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn ident(&mut self) -> Result<String, GroupError> {
        let rest = self.rest();
        let end = rest.find(':').ok_or_else(|| self.malformed("expected `family:`".into()))?;
        let name = rest[..end].to_string();
        self.pos += end + 1;
        Ok(name)
    }

    fn uint(&mut self) -> Result<usize, GroupError> {
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let value = rest[..end]
            .parse()
            .map_err(|_| self.malformed(format!("expected a number at {rest:?}")))?;
        self.pos += end;
        Ok(value)
    }

    fn comma(&mut self) -> Result<(), GroupError> {
        if self.rest().starts_with(',') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.malformed(format!("expected `,` at {:?}", self.rest())))
        }
    }

    fn group(&mut self) -> Result<Group, GroupError> {
        let family = self.ident()?;
        match family.as_str() {
            "cyclic" => cyclic(self.uint()?),
            "product" => {
                let g = self.group()?;
                self.comma()?;
                let h = self.group()?;
                direct_product(&g, &h)
            }
            "fpn" => {
                let p = self.uint()?;
                self.comma()?;
                let n = self.uint()?;
                elementary_abelian(p, n)
            }
            "dihedral" => dihedral(self.uint()?),
            "symmetric" => symmetric(self.uint()?),
            "quaternion" => match self.uint()? {
                8 => quaternion8(),
                n => Err(GroupError::OutOfRange {
                    family: "quaternion",
                    reason: format!("only quaternion:8 is supported, got {n}"),
                }),
            },
            "table" => {
                let path = self.rest().to_string();
                self.pos = self.src.len();
                table_file(&path)
            }
            _ => Err(GroupError::UnknownFamily(family)),
        }
    }
}

fn out_of_range(family: &'static str, reason: String) -> GroupError {
    GroupError::OutOfRange { family, reason }
}

fn check_order(family: &'static str, order: usize) -> Result<(), GroupError> {
    if order == 0 || order > MAX_ORDER {
        Err(out_of_range(family, format!("order {order} outside 1..={MAX_ORDER}")))
    } else {
        Ok(())
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn cyclic(m: usize) -> Result<Group, GroupError> {
    check_order("cyclic", m)?;
    let labels = (0..m).map(|i| i.to_string()).collect();
    Group::from_fn(m, labels, format!("cyclic:{m}"), |a, b| (a + b) % m)
}

pub fn direct_product(g: &Group, h: &Group) -> Result<Group, GroupError> {
    let (n, k) = (g.order(), h.order());
    check_order("product", n.saturating_mul(k))?;
    let labels = (0..n * k)
        .map(|i| format!("({},{})", g.label(i % n), h.label(i / n)))
        .collect();
    let descriptor = format!("product:{},{}", g.descriptor(), h.descriptor());
    Group::from_fn(n * k, labels, descriptor, |a, b| {
        g.mul(a % n, b % n) + n * h.mul(a / n, b / n)
    })
}

pub fn elementary_abelian(p: usize, n: usize) -> Result<Group, GroupError> {
    if !is_prime(p) {
        return Err(out_of_range("fpn", format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(out_of_range("fpn", "dimension must be at least 1".into()));
    }
    let order = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&o| o <= MAX_ORDER));
    let order = order.ok_or_else(|| out_of_range("fpn", format!("{p}^{n} exceeds {MAX_ORDER}")))?;
    let digits = |mut x: usize| {
        let mut d = vec![0; n];
        for slot in d.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let labels = (0..order)
        .map(|x| {
            let d: Vec<String> = digits(x).iter().map(|c| c.to_string()).collect();
            format!("({})", d.join(","))
        })
        .collect();
    Group::from_fn(order, labels, format!("fpn:{p},{n}"), |a, b| {
        digits(a).iter().zip(digits(b)).fold(0, |acc, (x, y)| acc * p + (x + y) % p)
    })
}

pub fn dihedral(m: usize) -> Result<Group, GroupError> {
    if m == 0 {
        return Err(out_of_range("dihedral", "m must be at least 1".into()));
    }
    check_order("dihedral", 2 * m)?;
    let labels = (0..2 * m)
        .map(|x| match (x / m, x % m) {
            (0, 0) => "e".to_string(),
            (0, i) => format!("r^{i}"),
            (_, 0) => "s".to_string(),
            (_, i) => format!("s r^{i}"),
        })
        .collect();
    // s^f r^i · s^g r^j = s^(f+g) r^((-1)^g i + j)
    Group::from_fn(2 * m, labels, format!("dihedral:{m}"), |a, b| {
        let (f, i) = (a / m, a % m);
        let (g, j) = (b / m, b % m);
        let i = if g == 1 { (m - i) % m } else { i };
        ((f + g) % 2) * m + (i + j) % m
    })
}

pub fn symmetric(n: usize) -> Result<Group, GroupError> {
    if !(1..=6).contains(&n) {
        return Err(out_of_range("symmetric", format!("n = {n} outside 1..=6")));
    }
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
        .collect();
    Group::from_fn(perms.len(), labels, format!("symmetric:{n}"), |a, b| {
        let (s, t) = (&perms[a], &perms[b]);
        let composed: Vec<usize> = t.iter().map(|&x| s[x]).collect();
        index[&composed]
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn quaternion8() -> Result<Group, GroupError> {
    // element index = 2·unit + sign, units 1,i,j,k = 0..3
    // unit products as (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    Group::from_fn(8, labels, "quaternion:8", |a, b| {
        let (s, u) = UNIT[a / 2][b / 2];
        2 * u + (s + a % 2 + b % 2) % 2
    })
}

fn table_file(path: &str) -> Result<Group, GroupError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| GroupError::TableIo { path: path.into(), source })?;
    let (rows, labels) = parse_table_text(&text)?;
    Group::from_table(&rows, labels, format!("table:{path}"))
}
