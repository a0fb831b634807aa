#pragma once

#include <array>
#include <cmath>

namespace sdfsim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    double horizontal_norm() const { return std::hypot(x, y); }

    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Row-major 3x3 matrix; rows() are the basis vectors for a world->local rotation.
struct Mat3 {
    std::array<Vec3, 3> row;

    Vec3 operator*(const Vec3& v) const {
        return {row[0].dot(v), row[1].dot(v), row[2].dot(v)};
    }

    // For orthonormal matrices the transpose is the inverse.
    Vec3 transposed_mul(const Vec3& v) const {
        return {row[0].x * v.x + row[1].x * v.y + row[2].x * v.z,
                row[0].y * v.x + row[1].y * v.y + row[2].y * v.z,
                row[0].z * v.x + row[1].z * v.y + row[2].z * v.z};
    }

    double orthonormality_defect() const {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double d = row[i].dot(row[j]) - (i == j ? 1.0 : 0.0);
                worst = std::max(worst, std::abs(d));
            }
        }
        return worst;
    }
};

}  // namespace sdfsim
