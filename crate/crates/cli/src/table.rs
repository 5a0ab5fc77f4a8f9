// Symbolic layout of every degree-2 approximant and its inverse.
// q0, q1 (and q0*, q1* for beta = 1) are the coefficients printed by
// `mlpade coeffs --alpha A --beta B`.
pub const TABLE1: &str = "\
Global Pade approximations with degree 2 of E_{a,b}(-x) and its inverse
+------------+-------------+--------------------------------------------------------------------------------+
| Parameters | Function    | Global Pade approximation                                                      |
+------------+-------------+--------------------------------------------------------------------------------+
| 0<a<1, b>a | E_{a,b}(-x) | (1/G(b) + x/(G(b-a) q0)) / (1 + (q1/q0) x + x^2/q0)                            |
|            | -L_{a,b}(x) | 1/(2G(b-a)x) - q1/2 + sqrt((q1/2 - 1/(2G(b-a)x))^2 - q0 (1 - 1/(G(b)x)))       |
+------------+-------------+--------------------------------------------------------------------------------+
| 0<a<1, b=1 | E_{a}(-x)   | (1 + x/(G(1-a) q0*)) / (1 + (q1*/q0*) x + x^2/q0*)                             |
|            | -L_{a}(x)   | 1/(2G(1-a)x) - q1*/2 + sqrt((q1*/2 - 1/(2G(1-a)x))^2 - q0* (1 - 1/x))          |
+------------+-------------+--------------------------------------------------------------------------------+
| 0<a=b<1    | E_{a,a}(-x) | (1/G(a)) / (1 + 2G(1-a)^2/(G(1+a)G(1-2a)) x + G(1-a)/G(1+a) x^2)               |
|            | -L_{a,a}(x) | -G(1-a)/G(1-2a) + sqrt(G(1-a)^2/G(1-2a)^2 - G(1+a)/G(1-a) (1 - 1/(G(a)x)))     |
+------------+-------------+--------------------------------------------------------------------------------+
| a=1, b>1   | E_{1,b}(-x) | (1/G(b) + x/G(b+1)) / (1 + (2/b) x + x^2/(b(b-1)))                             |
|            | -L_{1,b}(x) | 1/(2G(b-1)x) - b + 1 + sqrt((b - 1 - 1/(2G(b-1)x))^2 - b(b-1) (1 - 1/(G(b)x))) |
+------------+-------------+--------------------------------------------------------------------------------+
G = Gamma; 1/G at a pole is 0. a = b = 1 is exact: E_{1,1}(-x) = exp(-x), -L_{1,1}(x) = -ln x.
";
