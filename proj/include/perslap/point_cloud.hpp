#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace perslap {

struct Point {
    Eigen::VectorXd coords;
    std::string element;               // optional text label ("" if absent)
    std::optional<double> bfactor;     // experimental B-factor, PDB inputs only
};

struct PointCloud {
    std::vector<Point> points;

    int size() const { return static_cast<int>(points.size()); }
    // Coordinate dimension; throws input_error if empty or inconsistent.
    int dim() const;
};

// Symmetric, zero-diagonal matrix of Euclidean pairwise distances.
using DistanceMatrix = Eigen::MatrixXd;

DistanceMatrix build_distance_matrix(const PointCloud& cloud);

// Largest pairwise distance (0 for a single point).
double cloud_diameter(const DistanceMatrix& d);

} // namespace perslap
