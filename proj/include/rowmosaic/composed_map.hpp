#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "rowmosaic/straightener.hpp"
#include "rowmosaic/types.hpp"

namespace rowmosaic {

// Full source-image-to-final-mosaic mapping, tracked as a stage list because
// the straightening stages are piecewise projective rather than a single
// matrix. apply() is exact; local() returns the 3x3 composition along the
// orbit of a point, exact in the neighborhood of that point's slices.
class ComposedMap {
public:
    using Stage = std::variant<Transform2D, std::shared_ptr<const PiecewiseWarp>>;

    void push(Transform2D t) { stages_.push_back(std::move(t)); }
    void push(std::shared_ptr<const PiecewiseWarp> w) { stages_.push_back(std::move(w)); }

    Vec2 apply(Vec2 p) const;
    Transform2D local(Vec2 p) const;

    const std::vector<Stage>& stages() const { return stages_; }

private:
    std::vector<Stage> stages_;
};

}  // namespace rowmosaic
