#include "mrexplore/messages.hpp"

#include <bit>
#include <string>

namespace mrexplore {

namespace {

enum Tag : std::uint8_t
{
    kRequestTurn = 1,
    kSubmitPoints = 2,
    kPointsReply = 3,
    kSubmitRewards = 4,
    kGoalReply = 5,
};

class Writer
{
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v)
    {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i)
            out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
    void length(std::size_t n)
    {
        if (n > 0xffffffffu)
            throw WireFormatError("list too long for the wire format");
        u32(static_cast<std::uint32_t>(n));
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class Reader
{
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) { }

    std::uint8_t u8()
    {
        need(1);
        return in_[pos_++];
    }
    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
        return v;
    }
    double f64()
    {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
        return std::bit_cast<double>(bits);
    }
    /* Length prefix, checked against the bytes left for its elements */
    std::size_t length(std::size_t element_size)
    {
        const std::size_t n = u32();
        if (n > (in_.size() - pos_) / element_size)
            throw WireFormatError("list length exceeds message size");
        return n;
    }
    void finish() const
    {
        if (pos_ != in_.size())
            throw WireFormatError("trailing bytes after message");
    }

private:
    void need(std::size_t n) const
    {
        if (in_.size() - pos_ < n)
            throw WireFormatError("truncated message");
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

void write_points(Writer& w, const std::vector<Point2>& points)
{
    w.length(points.size());
    for (const auto& p : points) {
        w.f64(p.x);
        w.f64(p.y);
    }
}

std::vector<Point2> read_points(Reader& r)
{
    std::vector<Point2> points(r.length(16));
    for (auto& p : points) {
        p.x = r.f64();
        p.y = r.f64();
    }
    return points;
}

} // namespace

std::vector<std::uint8_t> encode(const Message& message)
{
    Writer w;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RequestTurn>) {
                w.u8(kRequestTurn);
                w.u32(m.agent);
            } else if constexpr (std::is_same_v<T, SubmitPoints>) {
                w.u8(kSubmitPoints);
                w.u32(m.agent);
                write_points(w, m.points);
            } else if constexpr (std::is_same_v<T, PointsReply>) {
                w.u8(kPointsReply);
                write_points(w, m.points);
            } else if constexpr (std::is_same_v<T, SubmitRewards>) {
                w.u8(kSubmitRewards);
                w.u32(m.agent);
                w.length(m.rows.size());
                for (const auto& row : m.rows) {
                    w.f64(row.x);
                    w.f64(row.y);
                    w.f64(row.reward);
                }
            } else {
                w.u8(kGoalReply);
                w.f64(m.x);
                w.f64(m.y);
            }
        },
        message);
    return w.take();
}

Message decode(std::span<const std::uint8_t> bytes)
{
    Reader r(bytes);
    Message out;
    switch (const auto tag = r.u8()) {
    case kRequestTurn:
        out = RequestTurn{r.u32()};
        break;
    case kSubmitPoints: {
        SubmitPoints m;
        m.agent = r.u32();
        m.points = read_points(r);
        out = std::move(m);
        break;
    }
    case kPointsReply:
        out = PointsReply{read_points(r)};
        break;
    case kSubmitRewards: {
        SubmitRewards m;
        m.agent = r.u32();
        m.rows.resize(r.length(24));
        for (auto& row : m.rows) {
            row.x = r.f64();
            row.y = r.f64();
            row.reward = r.f64();
        }
        out = std::move(m);
        break;
    }
    case kGoalReply: {
        GoalReply m;
        m.x = r.f64();
        m.y = r.f64();
        out = m;
        break;
    }
    default:
        throw WireFormatError("unknown message tag " + std::to_string(tag));
    }
    r.finish();
    return out;
}

} // namespace mrexplore
