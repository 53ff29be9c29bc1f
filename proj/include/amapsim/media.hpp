#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace amapsim {

// The five service categories carried by the uplink. The class <-> canonical
// application mapping is fixed: CBR=voice, RT-VBR=video, NRT-VBR=ftp,
// ABR=data, UBR=email.
enum class MediaClass : std::uint8_t { Voice = 0, Video, Ftp, Data, Email };

constexpr int kMediaClassCount = 5;

constexpr std::array<MediaClass, kMediaClassCount> kAllMediaClasses = {
    MediaClass::Voice, MediaClass::Video, MediaClass::Ftp, MediaClass::Data,
    MediaClass::Email};

const char* media_name(MediaClass m);          // "voice", "video", ...
const char* media_service_tag(MediaClass m);   // "CBR", "RT-VBR", ...
bool parse_media(const std::string& name, MediaClass& out);

// Source priority. "low-latency" outranks every numeric level; numeric
// levels compare numerically (16 > 8 > 4 > 2).
struct Priority {
  bool low_latency = false;
  int level = 0;  // meaningful only when !low_latency

  static Priority lowest_latency() { return {true, 0}; }
  static Priority numeric(int level) { return {false, level}; }

  friend bool operator==(const Priority& a, const Priority& b) {
    return a.low_latency == b.low_latency &&
           (a.low_latency || a.level == b.level);
  }
};

// Three-way compare: negative when a ranks below b, 0 on equal rank.
int compare_priority(const Priority& a, const Priority& b);

std::string priority_to_string(const Priority& p);
bool parse_priority(const std::string& text, Priority& out);

}  // namespace amapsim
