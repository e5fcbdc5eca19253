#include <gtest/gtest.h>
#include <httplib.h>

#include <json.hpp>
#include <mutex>
#include <thread>

#include "feedsim/core/error.hpp"
#include "feedsim/socialfeed/http_backends.hpp"

using namespace feedsim;
using namespace feedsim::social;
using nlohmann::json;

namespace {

/// Local endpoint on an ephemeral port, served from a background thread.
class LocalServer {
 public:
  LocalServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Server& server() { return server_; }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

struct Captured {
  std::mutex mu;
  json body;
  std::string content_type;
};

}  // namespace

TEST(SplitUrl, Parts) {
  EXPECT_EQ(split_url("http://127.0.0.1:8080/v1/generate"),
            (std::pair<std::string, std::string>{"http://127.0.0.1:8080", "/v1/generate"}));
  EXPECT_EQ(split_url("http://host:1"), (std::pair<std::string, std::string>{"http://host:1", "/"}));
  EXPECT_THROW(split_url("host:1/x"), std::invalid_argument);
}

TEST(HttpTextGen, SendsRequestFieldsAndReadsText) {
  LocalServer srv;
  Captured cap;
  srv.server().Post("/gen", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(cap.mu);
    cap.body = json::parse(req.body);
    cap.content_type = req.get_header_value("Content-Type");
    res.set_content(json{{"text", "Looks strong today."}}.dump(), "application/json");
  });

  HttpTextGen::Options opt;
  opt.endpoint.url = srv.url("/gen");
  opt.endpoint.timeout_s = 5.0;
  opt.model = "tiny-model";
  opt.system = "be brief";
  opt.max_tokens = 64;
  opt.temperature = 0.3;
  HttpTextGen gen(opt);

  GenerationRequest req;
  req.prompt = "Write a post.";
  req.seed = 123456789012345ULL;
  EXPECT_EQ(gen.generate(req), "Looks strong today.");
  std::lock_guard lock(cap.mu);
  EXPECT_EQ(cap.content_type, "application/json");
  EXPECT_EQ(cap.body.at("model"), "tiny-model");
  EXPECT_EQ(cap.body.at("system"), "be brief");
  EXPECT_EQ(cap.body.at("prompt"), "Write a post.");
  EXPECT_EQ(cap.body.at("max_tokens"), 64);
  EXPECT_DOUBLE_EQ(cap.body.at("temperature").get<double>(), 0.3);
  EXPECT_EQ(cap.body.at("seed").get<std::uint64_t>(), 123456789012345ULL);
}

TEST(HttpTextGen, OmitsSystemWhenUnset) {
  LocalServer srv;
  Captured cap;
  srv.server().Post("/gen", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(cap.mu);
    cap.body = json::parse(req.body);
    res.set_content(R"({"text":"ok"})", "application/json");
  });
  HttpTextGen::Options opt;
  opt.endpoint.url = srv.url("/gen");
  HttpTextGen gen(opt);
  EXPECT_EQ(gen.generate({}), "ok");
  std::lock_guard lock(cap.mu);
  EXPECT_FALSE(cap.body.contains("system"));
}

TEST(HttpTextGen, FailuresAreBackendErrors) {
  LocalServer srv;
  srv.server().Post("/500", [](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  srv.server().Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  srv.server().Post("/notext", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"output":"x"})", "application/json");
  });
  srv.server().Post("/empty", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"text":""})", "application/json");
  });
  for (const char* path : {"/500", "/garbage", "/notext", "/empty", "/missing"}) {
    HttpTextGen::Options opt;
    opt.endpoint.url = srv.url(path);
    opt.endpoint.timeout_s = 5.0;
    HttpTextGen gen(opt);
    EXPECT_THROW(gen.generate({}), BackendError) << path;
  }
  HttpTextGen::Options closed;
  closed.endpoint.url = "http://127.0.0.1:1/gen";
  closed.endpoint.timeout_s = 1.0;
  EXPECT_THROW(HttpTextGen(closed).generate({}), BackendError);
  HttpTextGen::Options bad;
  bad.endpoint.url = "no-scheme";
  EXPECT_THROW(HttpTextGen{bad}, std::invalid_argument);
}

TEST(HttpSentiment, ParsesLabelAndConfidence) {
  LocalServer srv;
  Captured cap;
  srv.server().Post("/cls", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(cap.mu);
    cap.body = json::parse(req.body);
    res.set_content(R"({"label":"Negative","confidence":0.75})", "application/json");
  });
  HttpSentiment cls(HttpEndpoint{srv.url("/cls"), 5.0});
  const auto c = cls.classify("weak tape");
  EXPECT_EQ(c.label, SentimentLabel::negative);
  EXPECT_DOUBLE_EQ(c.confidence, 0.75);
  std::lock_guard lock(cap.mu);
  EXPECT_EQ(cap.body, (json{{"text", "weak tape"}}));
}

TEST(HttpSentiment, RejectsBadReplies) {
  LocalServer srv;
  const std::pair<const char*, const char*> replies[] = {
      {"/label", R"({"label":"bullish","confidence":0.5})"},
      {"/range", R"({"label":"positive","confidence":1.5})"},
      {"/missing", R"({"label":"positive"})"},
      {"/type", R"({"label":1,"confidence":0.5})"},
  };
  for (const auto& [path, body] : replies) {
    const std::string reply = body;
    srv.server().Post(path, [reply](const httplib::Request&, httplib::Response& res) {
      res.set_content(reply, "application/json");
    });
  }
  for (const auto& [path, body] : replies) {
    HttpSentiment cls(HttpEndpoint{srv.url(path), 5.0});
    EXPECT_THROW(cls.classify("x"), BackendError) << path;
  }
}
