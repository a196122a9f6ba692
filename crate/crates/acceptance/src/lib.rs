//! Holds only the `acceptance` test target, which runs all ten acceptance
//! criteria at the heavy tier and prints one PASS or FAIL line per criterion.
