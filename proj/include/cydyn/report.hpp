#ifndef CYDYN_REPORT_HPP
#define CYDYN_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/errors.hpp"

namespace cydyn {

/* Reports are ordered key/value string lists.  The machine rendering is
 * one "key value" line per entry, in insertion order; the human rendering
 * is a grouped, labeled view over the very same value strings.  Nothing is
 * ever reformatted numerically on the human side, so the two renderings
 * cannot drift apart, and there are no timestamps or durations anywhere,
 * so equal inputs give byte-equal output.
 */

class Report {
public:
    void add(const std::string& key, const std::string& value) {
        if (key.empty() || key.find(' ') != std::string::npos)
            throw DomainError("report keys must be nonempty and space-free: '" + key + "'");
        kv_.emplace_back(key, value);
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return kv_; }

    std::optional<std::string> lookup(const std::string& key) const {
        for (const auto& [k, v] : kv_)
            if (k == key) return v;
        return std::nullopt;
    }

    std::string render_machine() const {
        std::string out;
        for (const auto& [k, v] : kv_) {
            out += k;
            out += ' ';
            out += v;
            out += '\n';
        }
        return out;
    }

    /* Grouped human view: a header per top-level key segment, then
     * "  rest.of.key: value" lines, wrapped at `width` columns with a
     * hanging indent.  Values pass through verbatim.
     */
    std::string render_human(std::size_t width = 100) const {
        if (width < 40) width = 40;
        std::string out, current;
        for (const auto& [k, v] : kv_) {
            std::size_t dotpos = k.find('.');
            std::string head = dotpos == std::string::npos ? k : k.substr(0, dotpos);
            std::string rest = dotpos == std::string::npos ? "" : k.substr(dotpos + 1);
            if (head != current) {
                if (!out.empty()) out += '\n';
                out += "== " + head + " ==\n";
                current = head;
            }
            std::string line = "  " + (rest.empty() ? std::string("value") : rest) + ": " + v;
            out += wrap(line, width) + '\n';
        }
        return out;
    }

private:
    static std::string wrap(const std::string& line, std::size_t width) {
        if (line.size() <= width) return line;
        std::string out;
        std::size_t start = 0;
        while (line.size() - start > width) {
            std::size_t cut = line.rfind(' ', start + width);
            if (cut == std::string::npos || cut <= start) cut = start + width;
            out += line.substr(start, cut - start) + "\n      ";
            start = cut < line.size() && line[cut] == ' ' ? cut + 1 : cut;
        }
        out += line.substr(start);
        return out;
    }

    std::vector<std::pair<std::string, std::string>> kv_;
};

} // namespace cydyn

#endif
