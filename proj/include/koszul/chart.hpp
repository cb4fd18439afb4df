// Graded coordinate systems. A chart is an immutable ordered list of named
// coordinates with nonnegative integer degrees; the degree-0 block comes
// first and doubles as the variable list of the Scalar coefficient ring.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/errors.hpp"

namespace koszul {

struct Coordinate {
    std::string name;
    int degree = 0;
};

class Chart {
  public:
    Chart() = default;

    static Chart make(std::string label, std::vector<Coordinate> coords) {
        auto data = std::make_shared<Data>();
        data->label = std::move(label);
        data->coords = std::move(coords);
        data->n0 = 0;
        bool base_done = false;
        for (std::size_t i = 0; i < data->coords.size(); ++i) {
            const auto& c = data->coords[i];
            if (c.degree < 0)
                throw Error("coordinate '" + c.name + "' has negative degree");
            if (c.degree == 0) {
                if (base_done)
                    throw Error("degree-0 coordinate '" + c.name +
                                "' after nonzero-degree block");
                data->n0 += 1;
            } else {
                base_done = true;
            }
            for (std::size_t j = 0; j < i; ++j)
                if (data->coords[j].name == c.name)
                    throw Error("duplicate coordinate name '" + c.name + "'");
        }
        Chart chart;
        chart.data_ = std::move(data);
        return chart;
    }

    bool valid() const { return data_ != nullptr; }
    const std::string& label() const { return data_->label; }
    int size() const { return static_cast<int>(data_->coords.size()); }
    int base_count() const { return data_->n0; }
    int fiber_count() const { return size() - base_count(); }

    const Coordinate& coord(int i) const { return data_->coords[i]; }
    const std::string& name(int i) const { return data_->coords[i].name; }
    int degree(int i) const { return data_->coords[i].degree; }
    bool odd(int i) const { return data_->coords[i].degree % 2 != 0; }

    std::optional<int> find(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (data_->coords[i].name == name) return i;
        return std::nullopt;
    }

    bool same(const Chart& o) const { return data_ == o.data_; }

    void require_same(const Chart& o, const std::string& op) const {
        if (!same(o))
            throw ChartMismatch(op + " over '" + label() + "' vs '" +
                                o.label() + "'");
    }

  private:
    struct Data {
        std::string label;
        std::vector<Coordinate> coords;
        int n0 = 0;
    };
    std::shared_ptr<const Data> data_;
};

}  // namespace koszul
