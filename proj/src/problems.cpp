#include "robinssn/problems.hpp"

#include <cmath>
#include <numbers>

namespace robinssn {

ProblemSpec paper_example() {
    constexpr double pi = std::numbers::pi;
    ProblemSpec p;
    auto forcing = [pi](const Vector3& x) {
        return std::sin(2.0 * pi * x[0]) * std::sin(pi * x[1]) * std::cos(3.0 * pi * x[2]);
    };
    auto target = [](const Vector3& x) {
        return -512.0 * x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]) * x[2] * (1.0 - x[2]);
    };
    p.a_eval = [forcing](const Vector3& x, double y) { return y * y * y - forcing(x); };
    p.da_eval = [](const Vector3&, double y) { return 3.0 * y * y; };
    p.d2a_eval = [](const Vector3&, double y) { return 6.0 * y; };
    p.L_eval = [target](const Vector3& x, double y) {
        const double d = y - target(x);
        return 0.5 * d * d;
    };
    p.dL_eval = [target](const Vector3& x, double y) { return y - target(x); };
    p.d2L_eval = [](const Vector3&, double) { return 1.0; };
    p.g = {};
    p.a0 = [](const Vector3&) { return 1.0; };
    p.tracking_target = target;
    p.nu = 0.01;
    p.alpha = 0.0;
    p.beta = 1.0;
    return p;
}

ManufacturedProblem manufactured(const ManufacturedData& data) {
    ManufacturedProblem mp;
    mp.exact_state = data.y_star;
    mp.control_value = data.u_star;

    auto y_star = data.y_star;
    auto lap = data.laplacian_y_star;
    auto grad = data.grad_y_star;
    const double u_star = data.u_star;

    auto c = [y_star, lap](const Vector3& x) {
        const double ys = y_star(x);
        return -lap(x) + ys + ys * ys * ys;
    };

    ProblemSpec& p = mp.spec;
    p.a_eval = [c](const Vector3& x, double y) { return y * y * y - c(x); };
    p.da_eval = [](const Vector3&, double y) { return 3.0 * y * y; };
    p.d2a_eval = [](const Vector3&, double y) { return 6.0 * y; };
    p.L_eval = [y_star](const Vector3& x, double y) {
        const double d = y - y_star(x);
        return 0.5 * d * d;
    };
    p.dL_eval = [y_star](const Vector3& x, double y) { return y - y_star(x); };
    p.d2L_eval = [](const Vector3&, double) { return 1.0; };
    p.g = [grad, y_star, u_star](const Vector3& x, const Vector3& normal) {
        return grad(x).dot(normal) + u_star * y_star(x);
    };
    p.a0 = [](const Vector3&) { return 1.0; };
    p.tracking_target = y_star;
    // nu sized so the cold-started outer loop stays inside the basin of
    // attraction.
    p.nu = 1.0;
    p.alpha = 0.0;
    p.beta = 2.0;
    return mp;
}

ManufacturedProblem manufactured_linear_profile() {
    ManufacturedData data;
    data.y_star = [](const Vector3& x) { return x[0]; };
    data.laplacian_y_star = [](const Vector3&) { return 0.0; };
    data.grad_y_star = [](const Vector3&) { return Vector3(1.0, 0.0, 0.0); };
    data.u_star = 1.0;
    return manufactured(data);
}

ManufacturedProblem manufactured_quadratic_profile() {
    ManufacturedData data;
    data.y_star = [](const Vector3& x) { return x[0] + x[1] * x[1]; };
    data.laplacian_y_star = [](const Vector3&) { return 2.0; };
    data.grad_y_star = [](const Vector3& x) { return Vector3(1.0, 2.0 * x[1], 0.0); };
    data.u_star = 1.0;
    return manufactured(data);
}

} // namespace robinssn
