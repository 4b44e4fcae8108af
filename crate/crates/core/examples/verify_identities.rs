//! A few identity checks, as the command line runs them.

use genus_forge::ring::rat;
use genus_forge::verify::suite;

fn main() {
    let reports = [
        suite::theorem_a("bl-pt-p2", "euler", 6),
        suite::theorem_a("bl-line-p3", "universal", 6),
        suite::two_blow_ups("euler", false),
        suite::transition("bl-pt-p2-line", &rat(1, 2), 8),
        suite::change_of_variables("pt+line-p3", 8),
        suite::s1(2, 4),
    ];
    for r in &reports {
        println!("{}", r.summary());
    }
}
